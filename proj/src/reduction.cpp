#include "qglap/reduction.hpp"

#include <cmath>
#include <string>

namespace qglap {

EdgeWeights lift_weights(const LayeredGraph& g, const Branch& b, const ConeProfile& profile,
                         int k, double zero_tol) {
  if (k < 0 || k >= b.chain_length())
    throw Error(ErrorCode::IndexOutOfRange, "chain index " + std::to_string(k));
  const int sphere = b.n_r + k;
  if (profile.n != sphere)
    throw Error(ErrorCode::ShapeMismatch, "profile is for sphere " + std::to_string(profile.n) +
                                              ", branch chain vector lives on sphere " +
                                              std::to_string(sphere));
  const CVector& phi = b.chain[static_cast<std::size_t>(k)];

  EdgeWeights out;
  out.r = b.r;
  out.n_r = b.n_r;
  out.per_generation.resize(static_cast<std::size_t>(g.depth()));
  for (int j = 0; j < g.depth(); ++j) {
    const auto edges = g.generation_edges(j);
    CVector vals = CVector::Zero(static_cast<int>(edges.size()));
    const double scale =
        std::sqrt(static_cast<double>(profile.w[static_cast<std::size_t>(j)]) /
                  static_cast<double>(profile.g[static_cast<std::size_t>(j)]));
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const auto [v, w] = edges[e];
      const std::vector<int> cone =
          (j >= sphere) ? g.cone_at(j, v, sphere) : g.cone_at(j + 1, w, sphere);
      Complex sum = 0.0;
      for (int x : cone) sum += phi[x];
      if (std::abs(sum) <= zero_tol) continue;
      const Complex mean = sum / static_cast<double>(cone.size());
      for (int x : cone)
        if (std::abs(phi[x] - mean) > 1e-8)
          throw Error(ErrorCode::ConstancyViolation,
                      "chain vector not constant on a cone with nonzero sum (generation " +
                          std::to_string(j) + ")");
      vals[static_cast<int>(e)] = scale * mean;
    }
    out.per_generation[static_cast<std::size_t>(j)] = std::move(vals);
  }
  return out;
}

std::pair<int, int> support_window(const LayeredGraph& g, const Branch& b, const EdgeWeights& w) {
  const int a_index = std::max(b.n_r - 1, 0);
  int last_nonzero = -1;
  for (int j = 0; j < g.depth(); ++j)
    if (w.per_generation[static_cast<std::size_t>(j)].cwiseAbs().maxCoeff() > 0.0)
      last_nonzero = j;
  if (last_nonzero < 0) throw Error(ErrorCode::EmptySupport, "all lifted weights vanish");
  return {a_index, last_nonzero + 1};
}

std::vector<JumpEntry> jump_data(const LayeredGraph& g, const MetricLayers& m, const Branch& b,
                                 const ConeProfile& profile) {
  const EdgeWeights w = lift_weights(g, b, profile);
  const auto [a_index, b_index] = support_window(g, b, w);
  const std::vector<double> t = m.breakpoints();

  std::vector<JumpEntry> jumps;
  for (int j = a_index + 1; j < b_index; ++j) {
    const double wj = static_cast<double>(profile.w[static_cast<std::size_t>(j)]);
    const double wjm = static_cast<double>(profile.w[static_cast<std::size_t>(j - 1)]);
    const double gj = static_cast<double>(profile.g[static_cast<std::size_t>(j)]);
    const double gjm = static_cast<double>(profile.g[static_cast<std::size_t>(j - 1)]);
    const double bin = static_cast<double>(profile.b_in[static_cast<std::size_t>(j)]);
    const double bout = static_cast<double>(profile.b_out[static_cast<std::size_t>(j)]);
    JumpEntry entry;
    entry.j = j;
    entry.t = t[static_cast<std::size_t>(j)];
    entry.c = std::sqrt((wj * gjm) / (wjm * gj));
    entry.d = entry.c * bout / bin;
    jumps.push_back(entry);
  }
  return jumps;
}

ReducedOperator build_reduced_operator(const LayeredGraph& g, const MetricLayers& m,
                                       const Branch& b) {
  const ConeProfile profile = cone_profiles(g, b.n_r);
  const EdgeWeights w = lift_weights(g, b, profile);
  const auto [a_index, b_index] = support_window(g, b, w);
  if (b_index <= a_index) throw Error(ErrorCode::DegenerateWindow, "b <= a");
  const std::vector<double> t = m.breakpoints();

  ReducedOperator op;
  op.r = b.r;
  op.a_index = a_index;
  op.b_index = b_index;
  op.a = t[static_cast<std::size_t>(a_index)];
  op.b = t[static_cast<std::size_t>(b_index)];
  op.jumps = jump_data(g, m, b, profile);
  return op;
}

SampledGraphFunction zero_sampled(const LayeredGraph& g, int samples_per_edge) {
  if (samples_per_edge < 2)
    throw Error(ErrorCode::InvalidParams, "need at least 2 samples per edge");
  SampledGraphFunction f;
  f.samples_per_edge = samples_per_edge;
  for (int j = 0; j < g.depth(); ++j)
    f.values.push_back(Eigen::MatrixXcd::Zero(static_cast<int>(g.edge_count(j)),
                                              samples_per_edge + 1));
  return f;
}

SampledGraphFunction sample_function(
    const LayeredGraph& g, const MetricLayers& m, int samples_per_edge,
    const std::function<Complex(int gen, int edge, double s)>& f) {
  SampledGraphFunction out = zero_sampled(g, samples_per_edge);
  for (int j = 0; j < g.depth(); ++j) {
    const double h = m.lengths[static_cast<std::size_t>(j)] / samples_per_edge;
    auto& block = out.values[static_cast<std::size_t>(j)];
    for (int e = 0; e < block.rows(); ++e)
      for (int i = 0; i <= samples_per_edge; ++i) block(e, i) = f(j, e, i * h);
  }
  return out;
}

namespace {

void check_shape(const LayeredGraph& g, const SampledGraphFunction& f) {
  if (static_cast<int>(f.values.size()) != g.depth())
    throw Error(ErrorCode::GridMismatch, "sampled function has wrong generation count");
  for (int j = 0; j < g.depth(); ++j) {
    const auto& block = f.values[static_cast<std::size_t>(j)];
    if (block.rows() != g.edge_count(j) || block.cols() != f.samples_per_edge + 1)
      throw Error(ErrorCode::GridMismatch, "sampled block shape, generation " + std::to_string(j));
  }
}

}  // namespace

SampledGraphFunction project(const LayeredGraph& g, const MetricLayers& m, const Branch& b,
                             const EdgeWeights& w, const SampledGraphFunction& f) {
  (void)m;
  (void)b;
  check_shape(g, f);
  SampledGraphFunction out = zero_sampled(g, f.samples_per_edge);
  for (int j = 0; j < g.depth(); ++j) {
    const CVector& h = w.per_generation[static_cast<std::size_t>(j)];
    if (h.cwiseAbs().maxCoeff() <= 0.0) continue;
    const auto& in_block = f.values[static_cast<std::size_t>(j)];
    auto& out_block = out.values[static_cast<std::size_t>(j)];
    for (int i = 0; i <= f.samples_per_edge; ++i) {
      Complex s = 0.0;
      for (int e = 0; e < in_block.rows(); ++e) s += in_block(e, i) * std::conj(h[e]);
      for (int e = 0; e < in_block.rows(); ++e) out_block(e, i) = s * h[e];
    }
  }
  return out;
}

Complex quadrature_inner(const LayeredGraph& g, const MetricLayers& m,
                         const SampledGraphFunction& f, const SampledGraphFunction& h) {
  check_shape(g, f);
  check_shape(g, h);
  if (f.samples_per_edge != h.samples_per_edge)
    throw Error(ErrorCode::GridMismatch, "sample counts differ");
  const int M = f.samples_per_edge;
  if (M % 2 != 0) throw Error(ErrorCode::InvalidParams, "Simpson needs an even sample count");

  Complex total = 0.0;
  for (int j = 0; j < g.depth(); ++j) {
    const double step = m.lengths[static_cast<std::size_t>(j)] / M;
    const auto& fb = f.values[static_cast<std::size_t>(j)];
    const auto& hb = h.values[static_cast<std::size_t>(j)];
    for (int e = 0; e < fb.rows(); ++e) {
      Complex acc = fb(e, 0) * std::conj(hb(e, 0)) + fb(e, M) * std::conj(hb(e, M));
      for (int i = 1; i < M; ++i)
        acc += fb(e, i) * std::conj(hb(e, i)) * (i % 2 == 1 ? 4.0 : 2.0);
      total += acc * (step / 3.0);
    }
  }
  return total;
}

double quadrature_norm(const LayeredGraph& g, const MetricLayers& m,
                       const SampledGraphFunction& f) {
  return std::sqrt(std::abs(quadrature_inner(g, m, f, f)));
}

std::vector<Eigen::VectorXcd> u_transform(const LayeredGraph& g, const EdgeWeights& w,
                                          const SampledGraphFunction& f) {
  check_shape(g, f);
  std::vector<Eigen::VectorXcd> u;
  for (int j = 0; j < g.depth(); ++j) {
    const auto& block = f.values[static_cast<std::size_t>(j)];
    const CVector& h = w.per_generation[static_cast<std::size_t>(j)];
    Eigen::VectorXcd col = Eigen::VectorXcd::Zero(f.samples_per_edge + 1);
    for (int i = 0; i <= f.samples_per_edge; ++i) {
      Complex s = 0.0;
      for (int e = 0; e < block.rows(); ++e) s += block(e, i) * std::conj(h[e]);
      col[i] = s;
    }
    u.push_back(std::move(col));
  }
  return u;
}

}  // namespace qglap
