#pragma once

#include <functional>
#include <vector>

#include "qglap/decompose.hpp"
#include "qglap/graph.hpp"

namespace qglap {

/// Per-edge constant weights lifted from one chain vector of a branch.
/// per_generation[j][e] is the value on the e-th generation-j edge in
/// canonical order; zero outside the support window.
struct EdgeWeights {
  int r = 0;
  int n_r = 0;
  std::vector<CVector> per_generation;
};

/// Edge weights from the seed (k = 0) or from chain vector k; the per-edge
/// value on a generation-j edge is sqrt(w^j / g^j) times the (constant) value
/// the chain vector takes on the edge's cone at sphere n_r + k, or 0 when the
/// cone sum vanishes.
EdgeWeights lift_weights(const LayeredGraph& g, const Branch& b, const ConeProfile& profile,
                         int k = 0, double zero_tol = 1e-10);

/// (a_index, b_index): the support of the weights is the bands
/// a_index .. b_index - 1. a_index = max(n_r - 1, 0); b_index is the first
/// generation from which on all weights vanish (N if none).
std::pair<int, int> support_window(const LayeredGraph& g, const Branch& b, const EdgeWeights& w);

struct JumpEntry {
  int j = 0;     // sphere index of the breakpoint
  double t = 0;  // distance of that sphere from the root
  double d = 1;  // value jump   f(t+) = d f(t-)
  double c = 1;  // slope jump   f'(t+) = c f'(t-)
};

/// Jump coefficients at the interior breakpoints n_r <= j < b_index,
/// d_j = sqrt(w^j g^{j-1}) b_j^out / (sqrt(w^{j-1} g^j) b_j^in),
/// c_j = sqrt(w^j g^{j-1} / (w^{j-1} g^j)), from exact integer profile data.
std::vector<JumpEntry> jump_data(const LayeredGraph& g, const MetricLayers& m, const Branch& b,
                                 const ConeProfile& profile);

/// The one-dimensional weighted Laplacian unitarily equivalent to the
/// Laplacian restricted to the branch's subspace: Dirichlet at both window
/// ends (the right end being the natural support end or the truncation),
/// value/slope jumps at the interior breakpoints.
struct ReducedOperator {
  int r = 0;
  int a_index = 0;
  int b_index = 0;
  double a = 0;
  double b = 0;
  std::vector<JumpEntry> jumps;
};

ReducedOperator build_reduced_operator(const LayeredGraph& g, const MetricLayers& m,
                                       const Branch& b);

/// Per-edge sample arrays on uniform grids of `samples_per_edge` subintervals
/// (so samples_per_edge + 1 points per edge); edges of one generation share
/// the same parameter grid.
struct SampledGraphFunction {
  int samples_per_edge = 0;
  std::vector<Eigen::MatrixXcd> values; // per generation: edges x (M+1)
};

SampledGraphFunction zero_sampled(const LayeredGraph& g, int samples_per_edge);

/// Samples f(generation, edge, local coordinate in [0, l_gen]).
SampledGraphFunction sample_function(
    const LayeredGraph& g, const MetricLayers& m, int samples_per_edge,
    const std::function<Complex(int gen, int edge, double s)>& f);

/// Slice projection: at every shared grid parameter, the slice vector across
/// the generation's edges is projected onto the weight slice.
SampledGraphFunction project(const LayeredGraph& g, const MetricLayers& m, const Branch& b,
                             const EdgeWeights& w, const SampledGraphFunction& f);

/// Composite-Simpson inner product over the whole metric graph
/// (samples_per_edge must be even).
Complex quadrature_inner(const LayeredGraph& g, const MetricLayers& m,
                         const SampledGraphFunction& f, const SampledGraphFunction& h);
double quadrature_norm(const LayeredGraph& g, const MetricLayers& m,
                       const SampledGraphFunction& f);

/// The unitary image of a sampled function: one value per shared grid
/// parameter, u[j](i) = <f_t, h_t> on band j. Meaningful on members of the
/// branch subspace; defined for any sampled f.
std::vector<Eigen::VectorXcd> u_transform(const LayeredGraph& g, const EdgeWeights& w,
                                          const SampledGraphFunction& f);

}  // namespace qglap
