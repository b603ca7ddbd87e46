#pragma once

#include <string>
#include <vector>

#include "qglap/decompose.hpp"
#include "qglap/graph.hpp"

namespace qglap {

struct GeneratedGraph {
  LayeredGraph graph;
  MetricLayers metric;
};

/// Single strand: every sphere has one vertex.
GeneratedGraph make_path(int depth, double length = 1.0);

/// All possible edges between consecutive spheres.
GeneratedGraph make_antitree(const std::vector<int>& sizes, double length = 1.0);

/// Rooted tree whose branching number depends only on the generation.
/// branching[k] = children per sphere-k vertex; generations beyond the list
/// continue with single edges. depth < 0 means depth = branching.size().
GeneratedGraph make_radial_tree(const std::vector<int>& branching, int depth = -1,
                                double length = 1.0);

/// Two strands that fan out of a single stem, cross through a complete
/// bipartite block once, and continue straight: spheres 1,1,2,2,2,...
/// The smallest family preserving graph with a cycle.
GeneratedGraph make_braid(int depth, double length = 1.0);

/// Spherically symmetric but NOT family preserving: root of degree four,
/// second sphere of four, each first-sphere vertex adjacent to two second-
/// sphere vertices cyclically, continued by line segments.
GeneratedGraph make_cyclic_quartet(int depth, double length = 1.0);

/// Dispatch by preset name: "path", "antitree", "radial_tree", "braid",
/// "cyclic_quartet". `sizes` feeds the per-preset integer parameters.
GeneratedGraph generate(const std::string& preset, const std::vector<int>& sizes, int depth,
                        double length);

/// Root-of-unity vector on the children of vertex (n, v) of a radial tree:
/// child j carries omega^{j s} / sqrt(b), omega = exp(2 pi i / b),
/// 1 <= s <= b - 1. These seed the classical tree decomposition.
CVector ns_reference_vector(const LayeredGraph& tree, int n, int v, int s);

}  // namespace qglap
