#include "qglap/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qglap {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

long long Spectrum::count_below(double k) const {
  long long total = 0;
  for (const auto& e : entries)
    if (e.k <= k + 1e-12) total += e.multiplicity;
  return total;
}

long long Spectrum::total_count() const {
  long long total = 0;
  for (const auto& e : entries) total += e.multiplicity;
  return total;
}

// ---------------------------------------------------------------------------
// Reduced operator: phase-counting solver
// ---------------------------------------------------------------------------

namespace {

double pruefer_angle(const ReducedOperator& op, double k) {
  double theta = 0.0;
  double pos = op.a;
  for (const JumpEntry& jump : op.jumps) {
    theta += k * (jump.t - pos);
    pos = jump.t;
    const double whole = std::floor(theta / kPi);
    const double alpha = theta - whole * kPi; // [0, pi)
    double mapped = std::atan2(jump.d * std::sin(alpha), jump.c * std::cos(alpha));
    if (mapped < 0) mapped += kPi; // atan2 rounding at alpha ~ pi
    theta = whole * kPi + mapped;
  }
  theta += k * (op.b - pos);
  return theta;
}

}  // namespace

Spectrum reduced_spectrum(const ReducedOperator& op, double k_max, const std::string& source) {
  if (!(op.b > op.a)) throw Error(ErrorCode::DegenerateWindow, "b <= a");
  if (!(k_max > 0)) throw Error(ErrorCode::InvalidParams, "k_max must be positive");

  Spectrum spec;
  spec.k_max = k_max;
  const long long total = static_cast<long long>(std::floor(pruefer_angle(op, k_max) / kPi));
  for (long long m = 1; m <= total; ++m) {
    const double target = static_cast<double>(m) * kPi;
    double lo = 0.0, hi = k_max;
    while (hi - lo > 1e-13 * std::max(1.0, hi)) {
      const double mid = 0.5 * (lo + hi);
      if (pruefer_angle(op, mid) >= target)
        hi = mid;
      else
        lo = mid;
    }
    const double k_root = 0.5 * (lo + hi);
    const double residual = std::abs(std::sin(pruefer_angle(op, k_root)));
    if (residual > 1e-9)
      throw Error(ErrorCode::ScanStepTooCoarse,
                  "phase residual " + std::to_string(residual) + " at k=" + std::to_string(k_root));
    if (!spec.entries.empty() && k_root - spec.entries.back().k <= 1e-12)
      spec.entries.back().multiplicity += 1;
    else
      spec.entries.push_back({k_root, 1, source});
  }
  return spec;
}

// ---------------------------------------------------------------------------
// Full graph: vertex secular matrix
// ---------------------------------------------------------------------------

namespace {

struct VertexLayout {
  std::vector<int> offset; // per sphere; -1 when Dirichlet (root / truncation)
  int count = 0;
};

VertexLayout interior_layout(const LayeredGraph& g) {
  VertexLayout lay;
  lay.offset.assign(static_cast<std::size_t>(g.num_spheres()), -1);
  for (int n = 1; n < g.depth(); ++n) {
    lay.offset[static_cast<std::size_t>(n)] = lay.count;
    lay.count += g.sphere_size(n);
  }
  return lay;
}

Eigen::MatrixXd secular_matrix(const LayeredGraph& g, const MetricLayers& m,
                               const VertexLayout& lay, double k) {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(lay.count, lay.count);
  for (int j = 0; j < g.depth(); ++j) {
    const double l = m.lengths[static_cast<std::size_t>(j)];
    const double s = std::sin(k * l);
    const double cot = std::cos(k * l) / s;
    for (const auto& [v, w] : g.generation_edges(j)) {
      const int off_a = lay.offset[static_cast<std::size_t>(j)];
      const int off_b = lay.offset[static_cast<std::size_t>(j + 1)];
      const int a = off_a < 0 ? -1 : off_a + v;
      const int b = off_b < 0 ? -1 : off_b + w;
      if (a >= 0) M(a, a) -= k * cot;
      if (b >= 0) M(b, b) -= k * cot;
      if (a >= 0 && b >= 0) {
        M(a, b) += k / s;
        M(b, a) += k / s;
      }
    }
  }
  return M;
}

int negative_count(const LayeredGraph& g, const MetricLayers& m, const VertexLayout& lay,
                   double k) {
  if (lay.count == 0) return 0;
  const Eigen::MatrixXd M = secular_matrix(g, m, lay, k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
  int neg = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()[i] < 0.0) ++neg;
  return neg;
}

void locate_roots(const LayeredGraph& g, const MetricLayers& m, const VertexLayout& lay,
                  double lo, int nlo, double hi, int nhi, std::vector<SpectrumEntry>& out) {
  if (nlo == nhi) return;
  if (nlo < nhi)
    throw Error(ErrorCode::ScanStepTooCoarse,
                "eigenvalue count of the secular matrix increased between poles");
  if (hi - lo <= 1e-12 * std::max(1.0, hi)) {
    const double k = 0.5 * (lo + hi);
    // the located root must leave a near-kernel in the secular matrix
    const Eigen::MatrixXd M = secular_matrix(g, m, lay, k);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
    const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
    if (es.eigenvalues().cwiseAbs().minCoeff() > 1e-8 * scale)
      throw Error(ErrorCode::ScanStepTooCoarse,
                  "count drop at k=" + std::to_string(k) + " without a secular kernel");
    out.push_back({k, nlo - nhi, "full-secular"});
    return;
  }
  const double mid = 0.5 * (lo + hi);
  const int nmid = negative_count(g, m, lay, mid);
  locate_roots(g, m, lay, lo, nlo, mid, nmid, out);
  locate_roots(g, m, lay, mid, nmid, hi, nhi, out);
}

// Eigenfunctions at a pole of the secular matrix: vertex values must be
// consistent across resonant edges (x_t = (-1)^m x_i) and the Kirchhoff sums
// pick up the free sine amplitudes of the resonant edges.
int resonance_multiplicity(const LayeredGraph& g, const MetricLayers& m, const VertexLayout& lay,
                           double k) {
  std::vector<int> res_gen(static_cast<std::size_t>(g.depth()), 0); // pi-multiple or 0
  bool any = false;
  for (int j = 0; j < g.depth(); ++j) {
    const double ratio = k * m.lengths[static_cast<std::size_t>(j)] / kPi;
    const double rounded = std::round(ratio);
    if (rounded >= 1.0 && std::abs(ratio - rounded) <= 1e-9 * std::max(1.0, ratio)) {
      res_gen[static_cast<std::size_t>(j)] = static_cast<int>(rounded);
      any = true;
    }
  }
  if (!any) return 0;

  // amplitude indexing for resonant edges
  std::vector<std::vector<int>> amp(static_cast<std::size_t>(g.depth()));
  int n_amp = 0;
  for (int j = 0; j < g.depth(); ++j) {
    if (!res_gen[static_cast<std::size_t>(j)]) continue;
    const auto edges = g.generation_edges(j);
    amp[static_cast<std::size_t>(j)].assign(edges.size(), 0);
    for (std::size_t e = 0; e < edges.size(); ++e)
      amp[static_cast<std::size_t>(j)][e] = lay.count + n_amp++;
  }
  const int unknowns = lay.count + n_amp;

  std::vector<Eigen::VectorXd> rows;
  auto vertex_index = [&](int sphere, int v) -> int {
    const int off = lay.offset[static_cast<std::size_t>(sphere)];
    return off < 0 ? -1 : off + v;
  };

  // value consistency across resonant edges
  for (int j = 0; j < g.depth(); ++j) {
    if (!res_gen[static_cast<std::size_t>(j)]) continue;
    const double sign = (res_gen[static_cast<std::size_t>(j)] % 2 == 0) ? 1.0 : -1.0;
    const auto edges = g.generation_edges(j);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      Eigen::VectorXd row = Eigen::VectorXd::Zero(unknowns);
      const int a = vertex_index(j, edges[e].first);
      const int b = vertex_index(j + 1, edges[e].second);
      if (b >= 0) row[b] += 1.0;
      if (a >= 0) row[a] -= sign;
      if (row.cwiseAbs().maxCoeff() > 0) rows.push_back(std::move(row));
    }
  }

  // Kirchhoff rows at interior vertices
  for (int n = 1; n < g.depth(); ++n) {
    for (int v = 0; v < g.sphere_size(n); ++v) {
      Eigen::VectorXd row = Eigen::VectorXd::Zero(unknowns);
      const int self = vertex_index(n, v);
      // edges below (generation n-1, terminal side) and above (generation n)
      for (int side = 0; side < 2; ++side) {
        const int j = n - 1 + side;
        const double l = m.lengths[static_cast<std::size_t>(j)];
        const auto edges = g.generation_edges(j);
        for (std::size_t e = 0; e < edges.size(); ++e) {
          const auto [p, w] = edges[e];
          const bool incident = side == 0 ? (w == v) : (p == v);
          if (!incident) continue;
          if (res_gen[static_cast<std::size_t>(j)]) {
            const double sign = (res_gen[static_cast<std::size_t>(j)] % 2 == 0) ? 1.0 : -1.0;
            const int ia = amp[static_cast<std::size_t>(j)][e];
            row[ia] += (side == 1) ? 1.0 : -sign;
          } else {
            const double s = std::sin(k * l);
            const double cot = std::cos(k * l) / s;
            const int other = side == 0 ? vertex_index(j, p) : vertex_index(j + 1, w);
            row[self] -= cot;
            if (other >= 0) row[other] += 1.0 / s;
          }
        }
      }
      rows.push_back(std::move(row));
    }
  }

  if (rows.empty()) return n_amp; // no constraints at all
  Eigen::MatrixXd A(static_cast<int>(rows.size()), unknowns);
  for (std::size_t i = 0; i < rows.size(); ++i) A.row(static_cast<int>(i)) = rows[i];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
  const auto& sv = svd.singularValues();
  const double tol = 1e-9 * std::max(1.0, sv.size() > 0 ? sv[0] : 0.0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > tol) ++rank;
  return unknowns - rank;
}

}  // namespace

Spectrum full_spectrum_secular(const LayeredGraph& g, const MetricLayers& m, double k_max) {
  if (m.depth() != g.depth()) throw Error(ErrorCode::ShapeMismatch, "metric/graph depth");
  for (double l : m.lengths)
    if (!(l > 0)) throw Error(ErrorCode::InvalidParams, "lengths must be positive");
  if (!(k_max > 0)) throw Error(ErrorCode::InvalidParams, "k_max must be positive");

  const VertexLayout lay = interior_layout(g);

  // poles of the secular matrix: sin(k l_j) = 0
  std::vector<double> poles;
  for (int j = 0; j < g.depth(); ++j) {
    const double l = m.lengths[static_cast<std::size_t>(j)];
    for (int mm = 1; mm * kPi / l <= k_max * (1 + 1e-12); ++mm)
      poles.push_back(mm * kPi / l);
  }
  std::sort(poles.begin(), poles.end());
  std::vector<double> unique_poles;
  for (double p : poles)
    if (unique_poles.empty() || p - unique_poles.back() > 1e-11 * std::max(1.0, p))
      unique_poles.push_back(p);

  std::vector<SpectrumEntry> found;
  for (double p : unique_poles) {
    const int mult = resonance_multiplicity(g, m, lay, p);
    if (mult > 0) found.push_back({p, mult, "full-secular"});
  }

  // Eigenvalue branches of M(k) that belong to at-pole eigenfunctions tend to
  // zero quadratically while the matrix norm blows up like 1/eps, so counting
  // signs closer than ~1e-5 to a pole is numerically meaningless. At-pole
  // eigenvalues are produced by the resonance analysis instead.
  std::vector<std::pair<double, double>> intervals;
  double cursor = 1e-9;
  for (double p : unique_poles) {
    const double gap = 1e-4 * std::max(1.0, p);
    if (p - gap > cursor) intervals.emplace_back(cursor, p - gap);
    cursor = p + gap;
  }
  if (k_max > cursor) intervals.emplace_back(cursor, k_max);

  for (const auto& [lo, hi] : intervals) {
    const int nlo = negative_count(g, m, lay, lo);
    const int nhi = negative_count(g, m, lay, hi);
    locate_roots(g, m, lay, lo, nlo, hi, nhi, found);
  }

  std::sort(found.begin(), found.end(),
            [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.k < b.k; });
  Spectrum spec;
  spec.k_max = k_max;
  for (const SpectrumEntry& e : found) {
    if (!spec.entries.empty() && e.k - spec.entries.back().k <= 1e-10)
      spec.entries.back().multiplicity += e.multiplicity;
    else
      spec.entries.push_back(e);
  }
  return spec;
}

// ---------------------------------------------------------------------------
// Finite-difference oracle
// ---------------------------------------------------------------------------

Spectrum full_spectrum_fd(const LayeredGraph& g, const MetricLayers& m, double mesh_h, int count) {
  if (m.depth() != g.depth()) throw Error(ErrorCode::ShapeMismatch, "metric/graph depth");
  if (!(mesh_h > 0) || count < 1) throw Error(ErrorCode::InvalidParams, "mesh_h/count");

  std::vector<int> steps(static_cast<std::size_t>(g.depth()), 0);
  for (int j = 0; j < g.depth(); ++j) {
    const double l = m.lengths[static_cast<std::size_t>(j)];
    const double ratio = l / mesh_h;
    const int mj = std::max(1, static_cast<int>(std::round(ratio)));
    if (std::abs(mj - ratio) > 1e-9 * std::max(1.0, ratio))
      throw Error(ErrorCode::MeshMisfit, "h does not divide generation-" + std::to_string(j) +
                                             " length " + std::to_string(l));
    steps[static_cast<std::size_t>(j)] = mj;
  }

  const VertexLayout lay = interior_layout(g);
  int unknowns = lay.count;
  // edge-interior unknowns follow the vertex block, canonical edge order
  std::vector<std::vector<int>> edge_base(static_cast<std::size_t>(g.depth()));
  for (int j = 0; j < g.depth(); ++j) {
    const auto edges = g.generation_edges(j);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      edge_base[static_cast<std::size_t>(j)].push_back(unknowns);
      unknowns += steps[static_cast<std::size_t>(j)] - 1;
    }
  }

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(unknowns, unknowns);
  Eigen::VectorXd mass = Eigen::VectorXd::Zero(unknowns);
  for (int j = 0; j < g.depth(); ++j) {
    const int mj = steps[static_cast<std::size_t>(j)];
    const double he = m.lengths[static_cast<std::size_t>(j)] / mj;
    const auto edges = g.generation_edges(j);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const auto [v, w] = edges[e];
      const int base = edge_base[static_cast<std::size_t>(j)][e];
      // chain of node indices along the edge, -1 for Dirichlet ends
      std::vector<int> chain;
      chain.push_back(lay.offset[static_cast<std::size_t>(j)] < 0
                          ? -1
                          : lay.offset[static_cast<std::size_t>(j)] + v);
      for (int i = 1; i < mj; ++i) chain.push_back(base + i - 1);
      chain.push_back(lay.offset[static_cast<std::size_t>(j + 1)] < 0
                          ? -1
                          : lay.offset[static_cast<std::size_t>(j + 1)] + w);
      for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        const int p = chain[i], q = chain[i + 1];
        if (p >= 0) {
          A(p, p) += 1.0 / he;
          mass[p] += he / 2.0;
        }
        if (q >= 0) {
          A(q, q) += 1.0 / he;
          mass[q] += he / 2.0;
        }
        if (p >= 0 && q >= 0) {
          A(p, q) -= 1.0 / he;
          A(q, p) -= 1.0 / he;
        }
      }
    }
  }

  const Eigen::VectorXd scale = mass.cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd L = scale.asDiagonal() * A * scale.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L, Eigen::EigenvaluesOnly);

  Spectrum spec;
  spec.k_max = 0;
  const int keep = std::min<int>(count, static_cast<int>(es.eigenvalues().size()));
  for (int i = 0; i < keep; ++i) {
    const double lambda = std::max(0.0, es.eigenvalues()[i]);
    spec.entries.push_back({std::sqrt(lambda), 1, "full-fd"});
  }
  if (!spec.entries.empty()) spec.k_max = spec.entries.back().k;
  return spec;
}

// ---------------------------------------------------------------------------
// Multiset comparison
// ---------------------------------------------------------------------------

CompareReport compare_spectra(const Spectrum& full, const std::vector<Spectrum>& parts,
                              double tol) {
  std::vector<double> a, b;
  for (const auto& e : full.entries)
    for (int i = 0; i < e.multiplicity; ++i) a.push_back(e.k);
  for (const Spectrum& part : parts)
    for (const auto& e : part.entries)
      for (int i = 0; i < e.multiplicity; ++i) b.push_back(e.k);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());

  CompareReport rep;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double dev = std::abs(a[i] - b[j]);
    if (dev <= tol) {
      rep.max_deviation = std::max(rep.max_deviation, dev);
      ++rep.matched;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      rep.unmatched_full.push_back(a[i++]);
    } else {
      rep.unmatched_parts.push_back(b[j++]);
    }
  }
  while (i < a.size()) rep.unmatched_full.push_back(a[i++]);
  while (j < b.size()) rep.unmatched_parts.push_back(b[j++]);
  rep.pass = rep.unmatched_full.empty() && rep.unmatched_parts.empty();
  return rep;
}

}  // namespace qglap
