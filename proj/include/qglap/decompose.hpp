#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qglap/graph.hpp"

namespace qglap {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// One cyclic-subspace unit of the discrete decomposition: the seed vector
/// chain[0] lives on sphere n_r, chain[k] on sphere n_r + k. The chain is
/// orthonormal, each vector supported on a single sphere; it ends when the
/// propagated vector vanishes or the truncation sphere is passed.
struct Branch {
  int r = 0;
  int n_r = 0;
  std::vector<CVector> chain;
  // (signed offset j, eigenvalue of Lambda_{n_r, j} on the seed)
  std::vector<std::pair<int, double>> lambda_tags;

  int chain_length() const { return static_cast<int>(chain.size()); }
};

struct DiscreteDecomposition {
  std::vector<Branch> branches;
  int depth = 0;
};

struct DecomposeOptions {
  // Applies a seeded random unitary remix inside every degenerate joint
  // eigenspace before seeding branches; downstream data must not depend on it.
  bool mix_degenerate = false;
  std::uint64_t mix_seed = 0;
  double zero_tol = 1e-10; // chain termination / cone-sum threshold
};

/// E_n as a matrix: forward value-spreading from sphere n to sphere n+1.
IntMatrix e_matrix(const LayeredGraph& g, int n);

/// Go-and-return operator on sphere n. For j > 0 the walk takes j forward
/// steps and j back (deepest sphere touched is n + j, so n + j <= N is
/// required); for j < 0 it takes |j| backward steps and returns (|j| <= n).
IntMatrix lambda_op(const LayeredGraph& g, int n, int j);

struct JointEigenbasis {
  std::vector<CVector> vectors;           // orthonormal, full-space coordinates
  std::vector<std::vector<double>> tags;  // eigenvalue tuple per vector
};

/// Simultaneous diagonalization of a commuting family of symmetric integer
/// matrices restricted to the span of `subspace` (orthonormal). Commutation is
/// checked exactly, invariance of the subspace numerically. Vectors are
/// ordered by eigenvalue tuple (lexicographic ascending) and phase-normalized
/// so the first nonzero coordinate is real positive.
JointEigenbasis joint_eigenbasis(const std::vector<IntMatrix>& mats,
                                 const std::vector<CVector>& subspace,
                                 const DecomposeOptions& opts = {});

/// Step 1: builds the seed vectors sphere by sphere as joint eigenvectors of
/// the available Lambda family on the uncovered part of each sphere, and
/// extends every seed into its chain by forward propagation.
DiscreteDecomposition decompose_discrete(const LayeredGraph& g,
                                         const DecomposeOptions& opts = {});

struct JacobiData {
  std::vector<double> diag;    // <phi_k, Delta_d phi_k>
  std::vector<double> offdiag; // <phi_{k+1}, Delta_d phi_k>
};

/// Matrix of the discrete Laplacian restricted to the branch's cyclic subspace
/// in the chain basis; verifies tridiagonality to 1e-10.
JacobiData branch_jacobi(const LayeredGraph& g, const Branch& b);

/// Dense discrete Laplacian (degree minus adjacency) in the blocked vertex
/// order sphere 0, sphere 1, ...; mostly a test and oracle helper.
Eigen::MatrixXd dense_discrete_laplacian(const LayeredGraph& g);

}  // namespace qglap
