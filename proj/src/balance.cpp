#include "qglap/balance.hpp"

#include <string>

namespace qglap {

std::vector<int> bad_generations(const LayeredGraph& g) {
  std::vector<int> bad;
  for (int n = 0; n < g.depth(); ++n) {
    const long long edges = g.edge_count(n);
    if (edges > g.sphere_size(n) && edges > g.sphere_size(n + 1)) bad.push_back(n);
  }
  return bad;
}

BalanceResult balance(const LayeredGraph& g, const MetricLayers& m) {
  if (m.depth() != g.depth())
    throw Error(ErrorCode::ShapeMismatch, "metric depth " + std::to_string(m.depth()) +
                                              " != graph depth " + std::to_string(g.depth()));
  const std::vector<int> bad = bad_generations(g);
  std::vector<char> is_bad(static_cast<std::size_t>(g.depth()), 0);
  for (int n : bad) is_bad[static_cast<std::size_t>(n)] = 1;

  BalanceResult out;
  out.graph.sphere_sizes.push_back(1);
  out.sphere_origin.push_back(0);

  for (int n = 0; n < g.depth(); ++n) {
    const auto edges = g.generation_edges(n);
    if (!is_bad[static_cast<std::size_t>(n)]) {
      out.graph.biadjacency.push_back(g.biadjacency[n]);
      out.graph.sphere_sizes.push_back(g.sphere_size(n + 1));
      out.sphere_origin.push_back(n + 1);
      out.metric.lengths.push_back(m.lengths[static_cast<std::size_t>(n)]);
      std::vector<std::pair<int, int>> origin;
      for (std::size_t e = 0; e < edges.size(); ++e) origin.emplace_back(n, static_cast<int>(e));
      out.edge_origin.push_back(std::move(origin));
      continue;
    }

    // one fresh midpoint vertex per edge, in canonical edge order
    const int mid_count = static_cast<int>(edges.size());
    IntMatrix lower = IntMatrix::Zero(mid_count, g.sphere_size(n));
    IntMatrix upper = IntMatrix::Zero(g.sphere_size(n + 1), mid_count);
    for (int e = 0; e < mid_count; ++e) {
      lower(e, edges[static_cast<std::size_t>(e)].first) = 1;
      upper(edges[static_cast<std::size_t>(e)].second, e) = 1;
    }
    const double half = m.lengths[static_cast<std::size_t>(n)] / 2.0;

    out.graph.biadjacency.push_back(lower);
    out.graph.sphere_sizes.push_back(mid_count);
    out.sphere_origin.push_back(-1);
    out.metric.lengths.push_back(half);

    out.graph.biadjacency.push_back(upper);
    out.graph.sphere_sizes.push_back(g.sphere_size(n + 1));
    out.sphere_origin.push_back(n + 1);
    out.metric.lengths.push_back(half);

    // each midpoint has exactly one parent edge and one child edge, so both
    // halves keep the original edge's canonical index
    std::vector<std::pair<int, int>> lower_origin, upper_origin;
    for (int e = 0; e < mid_count; ++e) {
      lower_origin.emplace_back(n, e);
      upper_origin.emplace_back(n, e);
    }
    out.edge_origin.push_back(std::move(lower_origin));
    out.edge_origin.push_back(std::move(upper_origin));
  }

  out.graph = validate_graph(out.graph.sphere_sizes, out.graph.biadjacency);
  if (!bad_generations(out.graph).empty())
    throw Error(ErrorCode::CompletenessFailure, "balancing left a bad generation behind");
  return out;
}

}  // namespace qglap
