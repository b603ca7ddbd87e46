#pragma once

#include <vector>

#include "qglap/graph.hpp"

namespace qglap {

struct BalanceResult {
  LayeredGraph graph;
  MetricLayers metric;
  // original sphere index, or -1 for an inserted midpoint sphere
  std::vector<int> sphere_origin;
  // per new generation, per edge (canonical order): (original generation,
  // original edge index in canonical order)
  std::vector<std::vector<std::pair<int, int>>> edge_origin;
};

/// Generations whose edge count exceeds both bounding sphere sizes.
std::vector<int> bad_generations(const LayeredGraph& g);

/// Splits every edge of every bad generation at its midpoint through a fresh
/// vertex; the result has no bad generations and the metric is preserved
/// edge-by-edge. Inserted vertices are ordered by the split edge's canonical
/// (parent, child) position. Idempotent on already-balanced graphs.
BalanceResult balance(const LayeredGraph& g, const MetricLayers& m);

}  // namespace qglap
