#include <doctest.h>

#include "qglap/balance.hpp"
#include "qglap/presets.hpp"
#include "qglap/spectral.hpp"
#include "qglap/symmetry.hpp"

using namespace qglap;

TEST_CASE("bad generations") {
  CHECK(bad_generations(make_radial_tree({1, 2, 3, 2}).graph).empty());
  CHECK(bad_generations(make_path(6).graph).empty());

  const auto antitree = bad_generations(make_antitree({1, 2, 3}).graph);
  CHECK(antitree == std::vector<int>{1}); // generation 0 has 2 = s_1 edges

  const auto braid = bad_generations(make_braid(5).graph);
  CHECK(braid == std::vector<int>{2});
}

TEST_CASE("balance splits the braid crossing into a 4-vertex sphere") {
  const GeneratedGraph gen = make_braid(5);
  const BalanceResult bal = balance(gen.graph, gen.metric);
  CHECK(bal.graph.sphere_sizes == std::vector<int>{1, 1, 2, 4, 2, 2, 2});
  CHECK(bal.metric.lengths == std::vector<double>{1, 1, 0.5, 0.5, 1, 1});
  CHECK(bal.sphere_origin == std::vector<int>{0, 1, 2, -1, 3, 4, 5});
  CHECK(bad_generations(bal.graph).empty());

  // parent-major insertion: vertices under w_0 first, each pointing at its
  // child strand in order
  const IntMatrix& lower = bal.graph.biadjacency[2];
  CHECK(lower(0, 0) == 1);
  CHECK(lower(1, 0) == 1);
  CHECK(lower(2, 1) == 1);
  CHECK(lower(3, 1) == 1);
  const IntMatrix& upper = bal.graph.biadjacency[3];
  CHECK(upper(0, 0) == 1);
  CHECK(upper(1, 1) == 1);
  CHECK(upper(0, 2) == 1);
  CHECK(upper(1, 3) == 1);
}

TEST_CASE("balance splits antitree (1,2,3) generation 1") {
  const GeneratedGraph gen = make_antitree({1, 2, 3});
  const BalanceResult bal = balance(gen.graph, gen.metric);
  CHECK(bal.graph.sphere_sizes == std::vector<int>{1, 2, 6, 3});
  CHECK(bal.metric.lengths == std::vector<double>{1, 0.5, 0.5});
  CHECK(bal.graph.edge_count(1) == 6);
  CHECK(bal.graph.edge_count(2) == 6);
}

TEST_CASE("balance is the identity on balanced graphs and idempotent") {
  const GeneratedGraph tree = make_radial_tree({1, 2, 2});
  const BalanceResult once = balance(tree.graph, tree.metric);
  CHECK(once.graph.sphere_sizes == tree.graph.sphere_sizes);
  CHECK(once.metric.lengths == tree.metric.lengths);
  for (std::size_t i = 0; i < once.sphere_origin.size(); ++i)
    CHECK(once.sphere_origin[i] == static_cast<int>(i));

  const GeneratedGraph anti = make_antitree({1, 2, 3, 2});
  const BalanceResult first = balance(anti.graph, anti.metric);
  const BalanceResult second = balance(first.graph, first.metric);
  CHECK(second.graph.sphere_sizes == first.graph.sphere_sizes);
  CHECK(second.metric.lengths == first.metric.lengths);
  for (int n = 0; n < first.graph.depth(); ++n)
    CHECK((second.graph.biadjacency[static_cast<std::size_t>(n)] -
           first.graph.biadjacency[static_cast<std::size_t>(n)])
              .cwiseAbs()
              .maxCoeff() == 0);
}

TEST_CASE("balance preserves family preservation") {
  for (const GeneratedGraph& gen :
       {make_braid(5), make_antitree({1, 2, 3, 2}), make_cyclic_quartet(4)}) {
    const Verdict before = check_family_preserving(gen.graph).family_preserving;
    const BalanceResult bal = balance(gen.graph, gen.metric);
    CHECK(check_family_preserving(bal.graph).family_preserving == before);
  }
}

TEST_CASE("balance bookkeeping maps split edges to their source") {
  const GeneratedGraph gen = make_antitree({1, 2, 3});
  const BalanceResult bal = balance(gen.graph, gen.metric);
  REQUIRE(bal.edge_origin.size() == 3);
  for (const auto& [orig_gen, orig_edge] : bal.edge_origin[1]) {
    CHECK(orig_gen == 1);
    CHECK(orig_edge >= 0);
    CHECK(orig_edge < 6);
  }
  CHECK(bal.edge_origin[1] == bal.edge_origin[2]);
}

TEST_CASE("degree-2 insertion leaves the secular spectrum unchanged") {
  const GeneratedGraph gen = make_antitree({1, 2, 3});
  const BalanceResult bal = balance(gen.graph, gen.metric);
  const Spectrum before = full_spectrum_secular(gen.graph, gen.metric, 6.0);
  const Spectrum after = full_spectrum_secular(bal.graph, bal.metric, 6.0);
  REQUIRE(before.total_count() == after.total_count());
  std::vector<double> a, b;
  for (const auto& e : before.entries)
    for (int i = 0; i < e.multiplicity; ++i) a.push_back(e.k);
  for (const auto& e : after.entries)
    for (int i = 0; i < e.multiplicity; ++i) b.push_back(e.k);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-10);
}
