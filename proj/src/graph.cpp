#include "qglap/graph.hpp"

#include <algorithm>
#include <string>

namespace qglap {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::RootNotUnique: return "RootNotUnique";
    case ErrorCode::OrphanVertex: return "OrphanVertex";
    case ErrorCode::MultiEdge: return "MultiEdge";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::Timeout: return "Timeout";
    case ErrorCode::NonCommuting: return "NonCommuting";
    case ErrorCode::SubspaceNotInvariant: return "SubspaceNotInvariant";
    case ErrorCode::CompletenessFailure: return "CompletenessFailure";
    case ErrorCode::NotTridiagonal: return "NotTridiagonal";
    case ErrorCode::ConstancyViolation: return "ConstancyViolation";
    case ErrorCode::EmptySupport: return "EmptySupport";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::DegenerateWindow: return "DegenerateWindow";
    case ErrorCode::ScanStepTooCoarse: return "ScanStepTooCoarse";
    case ErrorCode::MeshMisfit: return "MeshMisfit";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::BranchTooSmall: return "BranchTooSmall";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

int LayeredGraph::sphere_size(int n) const {
  if (n < 0 || n >= num_spheres())
    throw Error(ErrorCode::IndexOutOfRange, "sphere index " + std::to_string(n));
  return sphere_sizes[n];
}

long long LayeredGraph::total_vertices() const {
  long long total = 0;
  for (int s : sphere_sizes) total += s;
  return total;
}

long long LayeredGraph::edge_count(int gen) const {
  if (gen < 0 || gen >= depth())
    throw Error(ErrorCode::IndexOutOfRange, "generation " + std::to_string(gen));
  return biadjacency[gen].sum();
}

std::vector<std::pair<int, int>> LayeredGraph::generation_edges(int gen) const {
  if (gen < 0 || gen >= depth())
    throw Error(ErrorCode::IndexOutOfRange, "generation " + std::to_string(gen));
  const IntMatrix& B = biadjacency[gen];
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(B.sum()));
  for (int v = 0; v < B.cols(); ++v)
    for (int w = 0; w < B.rows(); ++w)
      if (B(w, v) != 0) edges.emplace_back(v, w);
  return edges;
}

int LayeredGraph::backward_degree(int n, int v) const {
  if (n == 0) return 0;
  return static_cast<int>(biadjacency[n - 1].row(v).sum());
}

int LayeredGraph::forward_degree(int n, int v) const {
  if (n == depth()) return 0;
  return static_cast<int>(biadjacency[n].col(v).sum());
}

std::vector<int> LayeredGraph::parents(int n, int v) const {
  std::vector<int> out;
  if (n == 0) return out;
  const IntMatrix& B = biadjacency[n - 1];
  for (int u = 0; u < B.cols(); ++u)
    if (B(v, u) != 0) out.push_back(u);
  return out;
}

std::vector<int> LayeredGraph::children(int n, int v) const {
  std::vector<int> out;
  if (n == depth()) return out;
  const IntMatrix& B = biadjacency[n];
  for (int w = 0; w < B.rows(); ++w)
    if (B(w, v) != 0) out.push_back(w);
  return out;
}

std::vector<int> LayeredGraph::cone_at(int n, int v, int m) const {
  if (n < 0 || n >= num_spheres() || m < 0 || m >= num_spheres())
    throw Error(ErrorCode::IndexOutOfRange, "cone_at sphere index");
  std::vector<char> mark(static_cast<std::size_t>(sphere_size(n)), 0);
  mark[static_cast<std::size_t>(v)] = 1;
  int level = n;
  std::vector<char> cur = mark;
  while (level != m) {
    int next_level = level + (m > n ? 1 : -1);
    std::vector<char> next(static_cast<std::size_t>(sphere_size(next_level)), 0);
    for (int x = 0; x < sphere_size(level); ++x) {
      if (!cur[static_cast<std::size_t>(x)]) continue;
      const auto step = (m > n) ? children(level, x) : parents(level, x);
      for (int y : step) next[static_cast<std::size_t>(y)] = 1;
    }
    cur.swap(next);
    level = next_level;
  }
  std::vector<int> out;
  for (int x = 0; x < sphere_size(m); ++x)
    if (cur[static_cast<std::size_t>(x)]) out.push_back(x);
  return out;
}

std::vector<double> MetricLayers::breakpoints() const {
  std::vector<double> t(lengths.size() + 1, 0.0);
  for (std::size_t k = 0; k < lengths.size(); ++k) t[k + 1] = t[k] + lengths[k];
  return t;
}

double MetricLayers::height() const {
  double h = 0.0;
  for (double l : lengths) h += l;
  return h;
}

MetricLayers make_metric(const std::vector<double>& lengths) {
  for (double l : lengths)
    if (!(l > 0.0)) throw Error(ErrorCode::InvalidParams, "edge lengths must be positive");
  return MetricLayers{lengths};
}

MetricLayers uniform_metric(int depth, double length) {
  if (depth < 0 || !(length > 0.0))
    throw Error(ErrorCode::InvalidParams, "uniform_metric(depth, length)");
  return MetricLayers{std::vector<double>(static_cast<std::size_t>(depth), length)};
}

LayeredGraph validate_graph(const std::vector<int>& sphere_sizes,
                            const std::vector<IntMatrix>& biadjacency) {
  if (sphere_sizes.empty())
    throw Error(ErrorCode::ShapeMismatch, "no spheres");
  if (sphere_sizes[0] != 1)
    throw Error(ErrorCode::RootNotUnique, "s_0 = " + std::to_string(sphere_sizes[0]));
  for (std::size_t n = 0; n < sphere_sizes.size(); ++n)
    if (sphere_sizes[n] <= 0)
      throw Error(ErrorCode::ShapeMismatch, "sphere " + std::to_string(n) + " empty");
  if (biadjacency.size() + 1 != sphere_sizes.size())
    throw Error(ErrorCode::ShapeMismatch, "need one biadjacency matrix per generation");

  for (std::size_t n = 0; n < biadjacency.size(); ++n) {
    const IntMatrix& B = biadjacency[n];
    if (B.rows() != sphere_sizes[n + 1] || B.cols() != sphere_sizes[n])
      throw Error(ErrorCode::ShapeMismatch,
                  "B_" + std::to_string(n) + " has shape " + std::to_string(B.rows()) + "x" +
                      std::to_string(B.cols()));
    for (int w = 0; w < B.rows(); ++w) {
      long long row_sum = 0;
      for (int v = 0; v < B.cols(); ++v) {
        const long long e = B(w, v);
        if (e < 0 || e > 1)
          throw Error(ErrorCode::MultiEdge, "B_" + std::to_string(n) + "(" + std::to_string(w) +
                                                "," + std::to_string(v) + ") = " + std::to_string(e));
        row_sum += e;
      }
      if (row_sum == 0)
        throw Error(ErrorCode::OrphanVertex, "vertex " + std::to_string(w) + " of sphere " +
                                                 std::to_string(n + 1) + " has no backward edge");
    }
  }
  return LayeredGraph{sphere_sizes, biadjacency};
}

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r))
    throw Error(ErrorCode::Overflow, "path count product overflows int64");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r))
    throw Error(ErrorCode::Overflow, "path count sum overflows int64");
  return r;
}

IntMatrix checked_product(const IntMatrix& A, const IntMatrix& B) {
  IntMatrix C = IntMatrix::Zero(A.rows(), B.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < B.cols(); ++j) {
      std::int64_t acc = 0;
      for (int k = 0; k < A.cols(); ++k)
        acc = checked_add(acc, checked_mul(A(i, k), B(k, j)));
      C(i, j) = acc;
    }
  return C;
}

}  // namespace

IntMatrix path_count_matrix(const LayeredGraph& g, int n, int m) {
  if (n < 0 || m > g.depth() || n >= m)
    throw Error(ErrorCode::IndexOutOfRange,
                "path_count_matrix needs 0 <= n < m <= N, got n=" + std::to_string(n) +
                    " m=" + std::to_string(m));
  IntMatrix P = g.biadjacency[n];
  for (int k = n + 1; k < m; ++k) P = checked_product(g.biadjacency[k], P);
  return P;
}

namespace {

// g_n on band j: generation-j edges inside the cone of (n, v).
long long cone_band_count(const LayeredGraph& g, int n, int v, int j) {
  if (j >= n) {
    // edges whose initial vertex descends from v
    const auto heads = g.cone_at(n, v, j);
    long long total = 0;
    for (int x : heads) total += g.forward_degree(j, x);
    return total;
  }
  // edges whose terminal vertex is an ancestor of v
  const auto tails = g.cone_at(n, v, j + 1);
  long long total = 0;
  for (int x : tails) total += g.backward_degree(j + 1, x);
  return total;
}

// w_n on band j for the edge (v in S_j) -> (w in S_{j+1}).
long long slice_width(const LayeredGraph& g, int n, int j, int v, int w) {
  if (j >= n) return static_cast<long long>(g.cone_at(j, v, n).size());
  return static_cast<long long>(g.cone_at(j + 1, w, n).size());
}

}  // namespace

ConeProfile cone_profiles(const LayeredGraph& g, int n) {
  if (n < 0 || n >= g.num_spheres())
    throw Error(ErrorCode::IndexOutOfRange, "cone_profiles sphere " + std::to_string(n));

  ConeProfile p;
  p.n = n;
  const int N = g.depth();
  p.g.assign(static_cast<std::size_t>(N), 0);
  p.w.assign(static_cast<std::size_t>(N), 0);
  p.b_in.assign(static_cast<std::size_t>(N + 1), 0);
  p.b_out.assign(static_cast<std::size_t>(N + 1), 0);

  for (int j = 0; j < N; ++j) {
    const long long ref = cone_band_count(g, n, 0, j);
    for (int v = 1; v < g.sphere_size(n); ++v)
      if (cone_band_count(g, n, v, j) != ref)
        throw Error(ErrorCode::NotSymmetric,
                    "g_" + std::to_string(n) + " differs across sphere-" + std::to_string(n) +
                        " representatives on band " + std::to_string(j));
    p.g[static_cast<std::size_t>(j)] = ref;

    const auto edges = g.generation_edges(j);
    const long long wref = slice_width(g, n, j, edges[0].first, edges[0].second);
    for (const auto& [v, w] : edges)
      if (slice_width(g, n, j, v, w) != wref)
        throw Error(ErrorCode::NotSymmetric,
                    "w_" + std::to_string(n) + " differs across generation-" + std::to_string(j) +
                        " edges");
    p.w[static_cast<std::size_t>(j)] = wref;
  }

  for (int k = 0; k <= N; ++k) {
    const long long bin = g.backward_degree(k, 0);
    const long long bout = g.forward_degree(k, 0);
    for (int v = 1; v < g.sphere_size(k); ++v) {
      if (g.backward_degree(k, v) != bin)
        throw Error(ErrorCode::NotSymmetric, "b^in differs across sphere " + std::to_string(k));
      if (g.forward_degree(k, v) != bout)
        throw Error(ErrorCode::NotSymmetric, "b^out differs across sphere " + std::to_string(k));
    }
    p.b_in[static_cast<std::size_t>(k)] = bin;
    p.b_out[static_cast<std::size_t>(k)] = bout;
  }
  return p;
}

}  // namespace qglap
