#include <doctest.h>

#include <filesystem>

#include "qglap/balance.hpp"
#include "qglap/decompose.hpp"
#include "qglap/io.hpp"
#include "qglap/pipeline.hpp"
#include "qglap/presets.hpp"

using namespace qglap;

namespace {

std::string temp_dir(const std::string& tag) {
  const auto dir = std::filesystem::temp_directory_path() / ("qglap_test_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace

TEST_CASE("graph JSON round trip") {
  const GeneratedGraph gen = make_braid(5, 0.75);
  const std::string text = graph_to_json(gen.graph, gen.metric);
  const auto [g2, m2] = graph_from_json(text);
  CHECK(g2.sphere_sizes == gen.graph.sphere_sizes);
  CHECK(m2.lengths == gen.metric.lengths);
  for (int n = 0; n < gen.graph.depth(); ++n)
    CHECK((g2.biadjacency[static_cast<std::size_t>(n)] -
           gen.graph.biadjacency[static_cast<std::size_t>(n)])
              .cwiseAbs()
              .maxCoeff() == 0);
  // serialization is stable
  CHECK(graph_to_json(g2, m2) == text);
}

TEST_CASE("graph JSON rejects malformed input") {
  CHECK_THROWS_WITH_AS(graph_from_json("{"), doctest::Contains("IoError"), Error);
  CHECK_THROWS_WITH_AS(graph_from_json("{\"spheres\": [1]}"), doctest::Contains("IoError"),
                       Error);
  CHECK_THROWS_WITH_AS(
      graph_from_json("{\"spheres\": [1, 2], \"edges\": [[[5, 0]]], \"lengths\": [1.0]}"),
      doctest::Contains("IoError"), Error);
}

TEST_CASE("branches and operators round trip") {
  const GeneratedGraph gen = make_braid(5);
  const BalanceResult bal = balance(gen.graph, gen.metric);
  const DiscreteDecomposition dec = decompose_discrete(bal.graph);
  const DiscreteDecomposition dec2 = branches_from_json(branches_to_json(dec));
  REQUIRE(dec2.branches.size() == dec.branches.size());
  for (std::size_t i = 0; i < dec.branches.size(); ++i) {
    CHECK(dec2.branches[i].n_r == dec.branches[i].n_r);
    REQUIRE(dec2.branches[i].chain_length() == dec.branches[i].chain_length());
    for (int k = 0; k < dec.branches[i].chain_length(); ++k)
      CHECK((dec2.branches[i].chain[static_cast<std::size_t>(k)] -
             dec.branches[i].chain[static_cast<std::size_t>(k)])
                .norm() == 0.0);
  }

  std::vector<ReducedOperator> ops;
  for (const Branch& b : dec.branches) ops.push_back(build_reduced_operator(bal.graph, bal.metric, b));
  const auto ops2 = operators_from_json(operators_to_json(ops));
  REQUIRE(ops2.size() == ops.size());
  for (std::size_t i = 0; i < ops.size(); ++i) {
    CHECK(ops2[i].a == ops[i].a);
    CHECK(ops2[i].b == ops[i].b);
    REQUIRE(ops2[i].jumps.size() == ops[i].jumps.size());
    for (std::size_t j = 0; j < ops[i].jumps.size(); ++j) {
      CHECK(ops2[i].jumps[j].d == ops[i].jumps[j].d);
      CHECK(ops2[i].jumps[j].c == ops[i].jumps[j].c);
    }
  }
}

TEST_CASE("spectrum CSV round trip") {
  Spectrum a;
  a.entries.push_back({1.25, 1, "branch-0"});
  a.entries.push_back({2.5, 2, "branch-0"});
  Spectrum b;
  b.entries.push_back({0.5, 1, "branch-1"});
  const std::string csv = spectrum_to_csv({a, b});
  const auto parsed = spectrum_from_csv(csv);
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0].entries.size() == 2);
  CHECK(parsed[0].entries[1].multiplicity == 2);
  CHECK(parsed[1].entries[0].k == 0.5);
}

TEST_CASE("dot export lists every edge with rank groups") {
  const GeneratedGraph gen = make_antitree({1, 2, 2});
  const std::string dot = graph_to_dot(gen.graph);
  CHECK(dot.find("rank=same") != std::string::npos);
  CHECK(dot.find("s0_0 -> s1_0") != std::string::npos);
  CHECK(dot.find("s1_1 -> s2_1") != std::string::npos);

  const DiscreteDecomposition dec = decompose_discrete(gen.graph);
  const EdgeWeights w =
      lift_weights(gen.graph, dec.branches[0], cone_profiles(gen.graph, 0));
  const std::string wdot = weights_to_dot(gen.graph, w);
  CHECK(wdot.find("label=") != std::string::npos);
}

TEST_CASE("pipeline: single strand") {
  PipelineConfig cfg;
  cfg.preset = "path";
  cfg.depth = 4;
  cfg.k_max = 10.0;
  cfg.out_dir = temp_dir("path");
  const PipelineReport rep = run_pipeline(cfg);
  CHECK(rep.exit_code == 0);
  CHECK(rep.branch_count == 1);
  CHECK(rep.comparison.pass);
  CHECK(rep.comparison.max_deviation <= 1e-10);
  CHECK(rep.chain_total == rep.vertex_total);
}

TEST_CASE("pipeline: braid census and comparison") {
  PipelineConfig cfg;
  cfg.preset = "braid";
  cfg.depth = 5;
  cfg.out_dir = temp_dir("braid");
  cfg.emit_dot = true;
  const PipelineReport rep = run_pipeline(cfg);
  CHECK(rep.exit_code == 0);
  CHECK(rep.branch_count == 4);
  CHECK(rep.comparison.pass);
  long long reduced_total = 0;
  for (const Spectrum& s : rep.reduced) reduced_total += s.total_count();
  CHECK(reduced_total == rep.full.total_count());
  CHECK(std::filesystem::exists(cfg.out_dir + "/report.json"));
  CHECK(std::filesystem::exists(cfg.out_dir + "/graph.dot"));
  CHECK(std::filesystem::exists(cfg.out_dir + "/weights_branch0.dot"));
}

TEST_CASE("pipeline: antitree census follows the inserted-sphere counts") {
  PipelineConfig cfg;
  cfg.preset = "antitree";
  cfg.sizes = {1, 2, 3, 2, 2, 2, 2};
  cfg.skip_fd = true; // keep the unit suite quick; the acceptance suite runs fd
  cfg.out_dir = temp_dir("antitree");
  const PipelineReport rep = run_pipeline(cfg);
  CHECK(rep.exit_code == 0);
  CHECK(rep.comparison.pass);
  // seeds: radial + (s_1 - 1) at sphere 1 + s_j (s_{j+1} - 1) per bad generation
  long long expected = 1 + 1;
  const std::vector<int> s = cfg.sizes;
  for (std::size_t j = 1; j + 1 < s.size(); ++j)
    if (s[j] >= 2 && s[j + 1] >= 2) expected += s[j] * (s[j + 1] - 1);
  CHECK(rep.branch_count == expected);
}

TEST_CASE("pipeline fails with exit 3 on non-symmetric input") {
  PipelineConfig cfg;
  cfg.preset = "cyclic_quartet";
  cfg.depth = 4;
  cfg.out_dir = temp_dir("quartet");
  const PipelineReport rep = run_pipeline(cfg);
  CHECK(rep.exit_code == 3);
  CHECK(rep.family_preserving == Verdict::No);
}

TEST_CASE("pipeline artifacts are byte-identical across runs") {
  PipelineConfig cfg;
  cfg.preset = "braid";
  cfg.depth = 5;
  cfg.skip_fd = true;
  cfg.out_dir = temp_dir("det1");
  run_pipeline(cfg);
  PipelineConfig cfg2 = cfg;
  cfg2.out_dir = temp_dir("det2");
  run_pipeline(cfg2);
  for (const char* name : {"graph_balanced.json", "branches.json", "operators.json",
                           "spectrum_parts.csv", "spectrum_full.csv", "report.json"}) {
    CHECK(read_file(cfg.out_dir + "/" + name) == read_file(cfg2.out_dir + "/" + name));
  }
}
