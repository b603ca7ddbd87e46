#pragma once

#include <optional>
#include <vector>

#include "qglap/graph.hpp"

namespace qglap {

enum class Verdict { Yes, No, Unknown };

/// One forward/backward-neighbor pair together with the automorphism found for
/// it (per-sphere permutations; perms[k][x] = image of vertex x of sphere k).
struct PairWitness {
  int sphere = 0;
  int u = 0;
  int v = 0;
  bool forward = false;
  bool found = false;
  std::vector<std::vector<int>> perms;
};

struct SymmetryVerdict {
  Verdict family_preserving = Verdict::Unknown;
  std::vector<PairWitness> witnesses;
  std::optional<PairWitness> failing_pair;
  int checked_depth = 0;
  long long nodes_used = 0;
};

/// Searches, for every pair of forward (backward) neighbors in every sphere,
/// a rooted automorphism exchanging them while fixing all deeper (shallower)
/// spheres. Rooted automorphisms preserve distance from the root, so the
/// search runs over per-sphere permutations constrained by the biadjacency
/// matrices. Exceeding the node budget yields Verdict::Unknown.
SymmetryVerdict check_family_preserving(const LayeredGraph& g,
                                        long long node_budget = 10'000'000);

struct CommutationReport {
  bool commuting = true;
  long long max_commutator_norm = 0; // max absolute entry across all commutators
  int first_failing_sphere = -1;
  int failing_j1 = 0;
  int failing_j2 = 0;
};

/// Exact integer commutation check of all pairs among the available
/// {Lambda_{n,+j}} and {Lambda_{n,-j}} at sphere n.
CommutationReport check_lambda_commutation(const LayeredGraph& g, int n);

/// Runs the per-sphere check at every sphere; reports the worst offender.
CommutationReport check_lambda_commutation_all(const LayeredGraph& g);

bool verify_witness(const LayeredGraph& g, const PairWitness& w);

}  // namespace qglap
