#include "qglap/decompose.hpp"

#include <algorithm>
#include <random>

#include "qglap/symmetry.hpp"

namespace qglap {

IntMatrix e_matrix(const LayeredGraph& g, int n) {
  if (n < 0 || n >= g.depth())
    throw Error(ErrorCode::IndexOutOfRange, "e_matrix generation " + std::to_string(n));
  return g.biadjacency[n];
}

IntMatrix lambda_op(const LayeredGraph& g, int n, int j) {
  if (j == 0) throw Error(ErrorCode::InvalidParams, "lambda_op needs j != 0");
  if (j > 0) {
    if (n < 0 || n + j > g.depth())
      throw Error(ErrorCode::IndexOutOfRange,
                  "lambda_op(+): n=" + std::to_string(n) + " j=" + std::to_string(j));
    IntMatrix P = g.biadjacency[n];
    for (int k = n + 1; k < n + j; ++k) P = g.biadjacency[k] * P;
    return P.transpose() * P;
  }
  const int steps = -j;
  if (steps > n || n > g.depth())
    throw Error(ErrorCode::IndexOutOfRange,
                "lambda_op(-): n=" + std::to_string(n) + " j=" + std::to_string(j));
  IntMatrix Q = g.biadjacency[n - 1];
  for (int k = n - 2; k >= n - steps; --k) Q = Q * g.biadjacency[k];
  return Q * Q.transpose();
}

namespace {

constexpr double kGroupTol = 1e-7;

bool tuple_less(const std::vector<double>& a, const std::vector<double>& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    const double tol = 1e-9 * std::max({1.0, std::abs(a[i]), std::abs(b[i])});
    if (a[i] < b[i] - tol) return true;
    if (a[i] > b[i] + tol) return false;
  }
  return a.size() < b.size();
}

void phase_normalize(CVector& v) {
  const double scale = v.cwiseAbs().maxCoeff();
  if (scale <= 0.0) return;
  for (int i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-8 * scale) {
      const Complex z = v[i] / std::abs(v[i]);
      v *= std::conj(z);
      break;
    }
  }
}

CMatrix random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix G(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) G(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<CMatrix> qr(G);
  CMatrix Q = qr.householderQ() * CMatrix::Identity(dim, dim);
  return Q;
}

// Deterministic orthonormal basis of the column span of P (a projector of
// rank `rank`): Gram-Schmidt over the projections of the standard basis.
CMatrix canonical_block_basis(const CMatrix& P, int rank) {
  const int dim = static_cast<int>(P.rows());
  CMatrix basis(dim, rank);
  int got = 0;
  for (int i = 0; i < dim && got < rank; ++i) {
    CVector w = P.col(i);
    for (int k = 0; k < got; ++k) w -= basis.col(k) * basis.col(k).dot(w);
    const double nrm = w.norm();
    if (nrm > 1e-6) {
      basis.col(got++) = w / nrm;
    }
  }
  if (got < rank) throw Error(ErrorCode::SubspaceNotInvariant, "block basis extraction failed");
  return basis;
}

}  // namespace

JointEigenbasis joint_eigenbasis(const std::vector<IntMatrix>& mats,
                                 const std::vector<CVector>& subspace,
                                 const DecomposeOptions& opts) {
  JointEigenbasis out;
  if (subspace.empty()) return out;
  const int dim = static_cast<int>(subspace[0].size());
  const int d = static_cast<int>(subspace.size());

  for (std::size_t a = 0; a < mats.size(); ++a) {
    if (mats[a].rows() != dim || mats[a].cols() != dim)
      throw Error(ErrorCode::ShapeMismatch, "joint_eigenbasis matrix size");
    if ((mats[a] - mats[a].transpose()).cwiseAbs().maxCoeff() != 0)
      throw Error(ErrorCode::InvalidParams, "joint_eigenbasis needs symmetric matrices");
    for (std::size_t b = a + 1; b < mats.size(); ++b) {
      const IntMatrix comm = mats[a] * mats[b] - mats[b] * mats[a];
      if (comm.cwiseAbs().maxCoeff() != 0)
        throw Error(ErrorCode::NonCommuting, "matrices " + std::to_string(a) + " and " +
                                                 std::to_string(b) + " do not commute");
    }
  }

  CMatrix Q(dim, d);
  for (int i = 0; i < d; ++i) Q.col(i) = subspace[static_cast<std::size_t>(i)];
  if ((Q.adjoint() * Q - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-8)
    throw Error(ErrorCode::InvalidParams, "subspace basis is not orthonormal");

  std::vector<CMatrix> restricted; // d x d Hermitian restrictions
  for (const IntMatrix& M : mats) {
    const CMatrix MQ = M.cast<double>().cast<Complex>() * Q;
    const CMatrix R = Q.adjoint() * MQ;
    const double residual = (MQ - Q * R).cwiseAbs().maxCoeff();
    if (residual > 1e-10 * std::max(1.0, MQ.cwiseAbs().maxCoeff()))
      throw Error(ErrorCode::SubspaceNotInvariant,
                  "residual " + std::to_string(residual));
    restricted.push_back(R);
  }

  // Blocks live in subspace coordinates; refine by each matrix in turn.
  struct Block {
    CMatrix basis;            // d x b
    std::vector<double> tags;
  };
  std::vector<Block> blocks{Block{CMatrix::Identity(d, d), {}}};

  for (const CMatrix& R : restricted) {
    std::vector<Block> next;
    for (Block& blk : blocks) {
      const CMatrix H = blk.basis.adjoint() * R * blk.basis;
      Eigen::SelfAdjointEigenSolver<CMatrix> es(H);
      const Eigen::VectorXd evals = es.eigenvalues();
      const CMatrix evecs = es.eigenvectors();
      int i = 0;
      while (i < evals.size()) {
        int jend = i + 1;
        while (jend < evals.size() &&
               evals[jend] - evals[jend - 1] <=
                   kGroupTol * std::max({1.0, std::abs(evals[jend]), std::abs(evals[jend - 1])}))
          ++jend;
        Block sub;
        sub.basis = blk.basis * evecs.middleCols(i, jend - i);
        sub.tags = blk.tags;
        sub.tags.push_back(evals.segment(i, jend - i).mean());
        next.push_back(std::move(sub));
        i = jend;
      }
    }
    blocks = std::move(next);
  }

  std::mt19937_64 rng(opts.mix_seed);
  std::vector<std::pair<std::vector<double>, CVector>> items;
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    Block& blk = blocks[bi];
    const int b = static_cast<int>(blk.basis.cols());
    CMatrix basis = blk.basis;
    if (b > 1) {
      basis = canonical_block_basis(basis * basis.adjoint(), b);
      if (opts.mix_degenerate) basis = basis * random_unitary(b, rng);
    }
    for (int c = 0; c < b; ++c) {
      CVector v = Q * basis.col(c);
      phase_normalize(v);
      items.emplace_back(blk.tags, std::move(v));
    }
  }
  std::stable_sort(items.begin(), items.end(),
                   [](const auto& a, const auto& b) { return tuple_less(a.first, b.first); });
  for (auto& [tags, v] : items) {
    out.tags.push_back(tags);
    out.vectors.push_back(std::move(v));
  }
  return out;
}

namespace {

std::vector<IntMatrix> available_lambdas(const LayeredGraph& g, int n) {
  std::vector<IntMatrix> mats;
  for (int j = 1; n + j <= g.depth(); ++j) mats.push_back(lambda_op(g, n, j));
  for (int j = 1; j <= n; ++j) mats.push_back(lambda_op(g, n, -j));
  return mats;
}

std::vector<std::pair<int, double>> rayleigh_tags(const LayeredGraph& g, int n, const CVector& v) {
  std::vector<std::pair<int, double>> tags;
  for (int j = 1; n + j <= g.depth(); ++j) {
    const CMatrix M = lambda_op(g, n, j).cast<double>().cast<Complex>();
    tags.emplace_back(j, std::real(v.dot(M * v)));
  }
  for (int j = 1; j <= n; ++j) {
    const CMatrix M = lambda_op(g, n, -j).cast<double>().cast<Complex>();
    tags.emplace_back(-j, std::real(v.dot(M * v)));
  }
  return tags;
}

}  // namespace

DiscreteDecomposition decompose_discrete(const LayeredGraph& g, const DecomposeOptions& opts) {
  const CommutationReport comm = check_lambda_commutation_all(g);
  if (!comm.commuting)
    throw Error(ErrorCode::NonCommuting,
                "Lambda family fails to commute at sphere " +
                    std::to_string(comm.first_failing_sphere));

  const int N = g.depth();
  DiscreteDecomposition dec;
  dec.depth = N;
  std::vector<std::vector<CVector>> covered(static_cast<std::size_t>(N + 1));

  for (int n = 0; n <= N; ++n) {
    const int s = g.sphere_size(n);
    const int d_cov = static_cast<int>(covered[static_cast<std::size_t>(n)].size());
    if (d_cov >= s) continue;

    std::vector<CVector> seeds;
    if (n == 0) {
      seeds.push_back(CVector::Ones(1)); // delta at the root
    } else {
      CMatrix complement;
      if (d_cov == 0) {
        complement = CMatrix::Identity(s, s);
      } else {
        CMatrix C(s, d_cov);
        for (int i = 0; i < d_cov; ++i)
          C.col(i) = covered[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
        Eigen::JacobiSVD<CMatrix> svd(C, Eigen::ComputeFullU);
        complement = svd.matrixU().rightCols(s - d_cov);
      }
      std::vector<CVector> sub;
      for (int c = 0; c < complement.cols(); ++c) sub.push_back(complement.col(c));
      const auto mats = available_lambdas(g, n);
      if (mats.empty()) {
        for (auto& v : sub) {
          phase_normalize(v);
          seeds.push_back(v);
        }
      } else {
        seeds = joint_eigenbasis(mats, sub, opts).vectors;
      }
    }

    for (CVector& seed : seeds) {
      Branch br;
      br.r = static_cast<int>(dec.branches.size());
      br.n_r = n;
      br.chain.push_back(seed);
      covered[static_cast<std::size_t>(n)].push_back(seed);

      CVector v = seed;
      for (int m = n + 1; m <= N; ++m) {
        CVector next = g.biadjacency[m - 1].cast<double>().cast<Complex>() * v;
        for (const CVector& c : covered[static_cast<std::size_t>(m)]) next -= c * c.dot(next);
        const double nrm = next.norm();
        if (nrm <= opts.zero_tol) break;
        next /= nrm;
        br.chain.push_back(next);
        covered[static_cast<std::size_t>(m)].push_back(next);
        v = next;
      }
      br.lambda_tags = rayleigh_tags(g, n, seed);
      dec.branches.push_back(std::move(br));
    }
  }

  long long chain_total = 0;
  for (const Branch& b : dec.branches) chain_total += b.chain_length();
  if (chain_total != g.total_vertices())
    throw Error(ErrorCode::CompletenessFailure,
                "chain total " + std::to_string(chain_total) + " != vertex count " +
                    std::to_string(g.total_vertices()));
  return dec;
}

JacobiData branch_jacobi(const LayeredGraph& g, const Branch& b) {
  JacobiData jd;
  const int len = b.chain_length();
  for (int k = 0; k < len; ++k) {
    const int m = b.n_r + k;
    const CVector& phi = b.chain[static_cast<std::size_t>(k)];
    Complex diag = 0.0;
    for (int v = 0; v < g.sphere_size(m); ++v) {
      const double deg = g.backward_degree(m, v) + g.forward_degree(m, v);
      diag += std::conj(phi[v]) * deg * phi[v];
    }
    if (std::abs(std::imag(diag)) > 1e-10)
      throw Error(ErrorCode::NotTridiagonal, "non-real diagonal entry");
    jd.diag.push_back(std::real(diag));

    if (k + 1 < len) {
      const CVector& next = b.chain[static_cast<std::size_t>(k + 1)];
      const CVector fwd = g.biadjacency[m].cast<double>().cast<Complex>() * phi;
      const Complex c_down = -next.dot(fwd); // <phi_{k+1}, Delta phi_k>
      const CVector bwd = g.biadjacency[m].cast<double>().cast<Complex>().adjoint() * next;
      const Complex c_up = -phi.dot(bwd); // <phi_k, Delta phi_{k+1}>
      if (std::abs(c_down - std::conj(c_up)) > 1e-10)
        throw Error(ErrorCode::NotTridiagonal, "asymmetric off-diagonal");
      if (std::abs(std::imag(c_down)) > 1e-10)
        throw Error(ErrorCode::NotTridiagonal, "non-real off-diagonal entry");
      jd.offdiag.push_back(std::real(c_down));
    }
  }
  return jd;
}

Eigen::MatrixXd dense_discrete_laplacian(const LayeredGraph& g) {
  const int total = static_cast<int>(g.total_vertices());
  std::vector<int> offset(static_cast<std::size_t>(g.num_spheres()), 0);
  for (int n = 1; n < g.num_spheres(); ++n)
    offset[static_cast<std::size_t>(n)] =
        offset[static_cast<std::size_t>(n - 1)] + g.sphere_size(n - 1);

  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(total, total);
  for (int n = 0; n < g.depth(); ++n) {
    const IntMatrix& B = g.biadjacency[n];
    for (int w = 0; w < B.rows(); ++w)
      for (int v = 0; v < B.cols(); ++v) {
        if (!B(w, v)) continue;
        const int a = offset[static_cast<std::size_t>(n)] + v;
        const int c = offset[static_cast<std::size_t>(n + 1)] + w;
        L(a, a) += 1.0;
        L(c, c) += 1.0;
        L(a, c) -= 1.0;
        L(c, a) -= 1.0;
      }
  }
  return L;
}

}  // namespace qglap
