#include "qglap/presets.hpp"

#include <cmath>
#include <numbers>

namespace qglap {

GeneratedGraph make_path(int depth, double length) {
  if (depth < 1) throw Error(ErrorCode::InvalidParams, "path depth >= 1");
  std::vector<int> sizes(static_cast<std::size_t>(depth + 1), 1);
  std::vector<IntMatrix> biadj(static_cast<std::size_t>(depth), IntMatrix::Ones(1, 1));
  return {validate_graph(sizes, biadj), uniform_metric(depth, length)};
}

GeneratedGraph make_antitree(const std::vector<int>& sizes, double length) {
  if (sizes.size() < 2 || sizes[0] != 1)
    throw Error(ErrorCode::InvalidParams, "antitree sizes start with 1 and have depth >= 1");
  std::vector<IntMatrix> biadj;
  for (std::size_t n = 0; n + 1 < sizes.size(); ++n) {
    if (sizes[n + 1] < 1) throw Error(ErrorCode::InvalidParams, "antitree sphere sizes >= 1");
    biadj.push_back(IntMatrix::Ones(sizes[n + 1], sizes[n]));
  }
  return {validate_graph(sizes, biadj),
          uniform_metric(static_cast<int>(sizes.size()) - 1, length)};
}

GeneratedGraph make_radial_tree(const std::vector<int>& branching, int depth, double length) {
  if (depth < 0) depth = static_cast<int>(branching.size());
  if (depth < 1) throw Error(ErrorCode::InvalidParams, "radial tree depth >= 1");
  std::vector<int> sizes{1};
  std::vector<IntMatrix> biadj;
  for (int n = 0; n < depth; ++n) {
    const int b = n < static_cast<int>(branching.size())
                      ? branching[static_cast<std::size_t>(n)]
                      : 1;
    if (b < 1) throw Error(ErrorCode::InvalidParams, "branching numbers >= 1");
    const int parent = sizes.back();
    const int child = parent * b;
    IntMatrix B = IntMatrix::Zero(child, parent);
    for (int v = 0; v < parent; ++v)
      for (int j = 0; j < b; ++j) B(v * b + j, v) = 1;
    biadj.push_back(B);
    sizes.push_back(child);
  }
  return {validate_graph(sizes, biadj), uniform_metric(depth, length)};
}

GeneratedGraph make_braid(int depth, double length) {
  if (depth < 4) throw Error(ErrorCode::InvalidParams, "braid depth >= 4");
  std::vector<int> sizes{1, 1, 2};
  std::vector<IntMatrix> biadj;
  biadj.push_back(IntMatrix::Ones(1, 1));
  biadj.push_back(IntMatrix::Ones(2, 1));
  biadj.push_back(IntMatrix::Ones(2, 2)); // the crossing block
  sizes.push_back(2);
  for (int n = 3; n < depth; ++n) {
    biadj.push_back(IntMatrix::Identity(2, 2));
    sizes.push_back(2);
  }
  return {validate_graph(sizes, biadj), uniform_metric(depth, length)};
}

GeneratedGraph make_cyclic_quartet(int depth, double length) {
  if (depth < 2) throw Error(ErrorCode::InvalidParams, "cyclic_quartet depth >= 2");
  std::vector<int> sizes{1, 4, 4};
  std::vector<IntMatrix> biadj;
  biadj.push_back(IntMatrix::Ones(4, 1));
  IntMatrix ring = IntMatrix::Zero(4, 4);
  for (int v = 0; v < 4; ++v) {
    ring(v, v) = 1;
    ring((v + 1) % 4, v) = 1;
  }
  biadj.push_back(ring);
  for (int n = 2; n < depth; ++n) {
    biadj.push_back(IntMatrix::Identity(4, 4));
    sizes.push_back(4);
  }
  return {validate_graph(sizes, biadj), uniform_metric(depth, length)};
}

GeneratedGraph generate(const std::string& preset, const std::vector<int>& sizes, int depth,
                        double length) {
  if (preset == "path") return make_path(depth > 0 ? depth : 4, length);
  if (preset == "antitree") return make_antitree(sizes, length);
  if (preset == "radial_tree") return make_radial_tree(sizes, depth, length);
  if (preset == "braid") return make_braid(depth > 0 ? depth : 5, length);
  if (preset == "cyclic_quartet") return make_cyclic_quartet(depth > 0 ? depth : 4, length);
  throw Error(ErrorCode::InvalidParams, "unknown preset '" + preset + "'");
}

CVector ns_reference_vector(const LayeredGraph& tree, int n, int v, int s) {
  for (int k = 1; k <= tree.depth(); ++k)
    for (int x = 0; x < tree.sphere_size(k); ++x)
      if (tree.backward_degree(k, x) != 1)
        throw Error(ErrorCode::NotATree, "vertex with several parents");
  if (n < 0 || n >= tree.depth() || v < 0 || v >= tree.sphere_size(n))
    throw Error(ErrorCode::IndexOutOfRange, "vertex (" + std::to_string(n) + "," +
                                                std::to_string(v) + ")");
  const std::vector<int> kids = tree.children(n, v);
  const int b = static_cast<int>(kids.size());
  if (b < 2) throw Error(ErrorCode::BranchTooSmall, "branching number " + std::to_string(b));
  if (s < 1 || s > b - 1)
    throw Error(ErrorCode::InvalidParams, "s must satisfy 1 <= s <= b - 1");

  CVector phi = CVector::Zero(tree.sphere_size(n + 1));
  const double norm = std::sqrt(static_cast<double>(b));
  for (int j = 0; j < b; ++j) {
    const double angle = 2.0 * std::numbers::pi * (j + 1) * s / b;
    phi[kids[static_cast<std::size_t>(j)]] = Complex(std::cos(angle), std::sin(angle)) / norm;
  }
  return phi;
}

}  // namespace qglap
