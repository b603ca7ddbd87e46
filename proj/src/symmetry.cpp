#include "qglap/symmetry.hpp"

#include <algorithm>
#include <set>

#include "qglap/decompose.hpp"

namespace qglap {

namespace {

struct BudgetExceeded {};

struct SearchCtx {
  const LayeredGraph& g;
  long long budget;
  long long nodes = 0;

  void tick() {
    if (++nodes > budget) throw BudgetExceeded{};
  }
};

std::vector<int> identity_perm(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  return p;
}

// Candidate images for each vertex of `level` given the already-fixed
// permutation on the adjacent level. For dir = -1 the level above (level+1)
// is fixed and columns of B_level must match through the row permutation;
// for dir = +1 the level below (level-1) is fixed and rows of B_{level-1}
// must match through the column permutation.
std::vector<std::vector<int>> candidate_images(const LayeredGraph& g, int level, int dir,
                                               const std::vector<int>& adjacent_perm) {
  const int s = g.sphere_size(level);
  std::vector<std::vector<int>> cand(static_cast<std::size_t>(s));
  if (dir < 0) {
    const IntMatrix& B = g.biadjacency[level]; // s_{level+1} x s_level
    for (int x = 0; x < s; ++x)
      for (int xp = 0; xp < s; ++xp) {
        bool ok = true;
        for (int w = 0; w < B.rows() && ok; ++w)
          ok = B(adjacent_perm[static_cast<std::size_t>(w)], xp) == B(w, x);
        if (ok) cand[static_cast<std::size_t>(x)].push_back(xp);
      }
  } else {
    const IntMatrix& B = g.biadjacency[level - 1]; // s_level x s_{level-1}
    for (int x = 0; x < s; ++x)
      for (int xp = 0; xp < s; ++xp) {
        bool ok = true;
        for (int u = 0; u < B.cols() && ok; ++u)
          ok = B(xp, adjacent_perm[static_cast<std::size_t>(u)]) == B(x, u);
        if (ok) cand[static_cast<std::size_t>(x)].push_back(xp);
      }
  }
  return cand;
}

bool assign_levels(SearchCtx& ctx, std::vector<std::vector<int>>& perms, int level, int dir,
                   int force_from, int force_to);

// Backtracks over images of the vertices of `level`, honoring candidate lists
// and bijectivity, and recurses into the next level once complete.
bool assign_vertices(SearchCtx& ctx, std::vector<std::vector<int>>& perms, int level, int dir,
                     const std::vector<std::vector<int>>& cand, std::vector<char>& used, int x) {
  const int s = ctx.g.sphere_size(level);
  if (x == s) {
    const int next = level + dir;
    const bool more = (dir < 0) ? (next >= 1) : (next <= ctx.g.depth());
    if (!more) {
      if (dir < 0) {
        // root level: tau_0 = Id must stay consistent with tau_1
        const IntMatrix& B0 = ctx.g.biadjacency[0];
        for (int w = 0; w < B0.rows(); ++w)
          if (B0(perms[1][static_cast<std::size_t>(w)], 0) != B0(w, 0)) return false;
      }
      return true;
    }
    return assign_levels(ctx, perms, next, dir, -1, -1);
  }
  if (perms[static_cast<std::size_t>(level)][static_cast<std::size_t>(x)] >= 0)
    return assign_vertices(ctx, perms, level, dir, cand, used, x + 1);
  for (int img : cand[static_cast<std::size_t>(x)]) {
    if (used[static_cast<std::size_t>(img)]) continue;
    ctx.tick();
    perms[static_cast<std::size_t>(level)][static_cast<std::size_t>(x)] = img;
    used[static_cast<std::size_t>(img)] = 1;
    if (assign_vertices(ctx, perms, level, dir, cand, used, x + 1)) return true;
    perms[static_cast<std::size_t>(level)][static_cast<std::size_t>(x)] = -1;
    used[static_cast<std::size_t>(img)] = 0;
  }
  return false;
}

bool assign_levels(SearchCtx& ctx, std::vector<std::vector<int>>& perms, int level, int dir,
                   int force_from, int force_to) {
  const int adjacent = level - dir;
  const auto cand = candidate_images(ctx.g, level, dir, perms[static_cast<std::size_t>(adjacent)]);
  const int s = ctx.g.sphere_size(level);
  std::vector<char> used(static_cast<std::size_t>(s), 0);
  auto& perm = perms[static_cast<std::size_t>(level)];
  perm.assign(static_cast<std::size_t>(s), -1);
  if (force_from >= 0) {
    const auto& c = cand[static_cast<std::size_t>(force_from)];
    if (std::find(c.begin(), c.end(), force_to) == c.end()) return false;
    perm[static_cast<std::size_t>(force_from)] = force_to;
    used[static_cast<std::size_t>(force_to)] = 1;
  }
  if (assign_vertices(ctx, perms, level, dir, cand, used, 0)) return true;
  perm = identity_perm(s);
  return false;
}

// Looks for a rooted automorphism with tau(u) = v at sphere n fixing all
// spheres on the `dir` side pointwise (dir = -1: deeper spheres fixed,
// forward-neighbor condition; dir = +1: shallower spheres fixed).
bool find_pair_automorphism(SearchCtx& ctx, int n, int u, int v, int dir,
                            std::vector<std::vector<int>>& perms) {
  perms.clear();
  for (int k = 0; k <= ctx.g.depth(); ++k) perms.push_back(identity_perm(ctx.g.sphere_size(k)));
  if (u == v) return true;
  if (dir > 0 && n == 0) return false;
  return assign_levels(ctx, perms, n, dir, u, v);
}

std::vector<std::pair<int, int>> neighbor_pairs(const LayeredGraph& g, int n, bool forward) {
  std::set<std::pair<int, int>> pairs;
  const int s = g.sphere_size(n);
  if (forward && n < g.depth()) {
    const IntMatrix& B = g.biadjacency[n];
    for (int w = 0; w < B.rows(); ++w)
      for (int a = 0; a < s; ++a) {
        if (!B(w, a)) continue;
        for (int b = a + 1; b < s; ++b)
          if (B(w, b)) pairs.emplace(a, b);
      }
  } else if (!forward && n > 0) {
    const IntMatrix& B = g.biadjacency[n - 1];
    for (int p = 0; p < B.cols(); ++p)
      for (int a = 0; a < s; ++a) {
        if (!B(a, p)) continue;
        for (int b = a + 1; b < s; ++b)
          if (B(b, p)) pairs.emplace(a, b);
      }
  }
  return {pairs.begin(), pairs.end()};
}

}  // namespace

bool verify_witness(const LayeredGraph& g, const PairWitness& w) {
  if (!w.found) return false;
  for (int k = 0; k < g.depth(); ++k) {
    const IntMatrix& B = g.biadjacency[k];
    const auto& pk = w.perms[static_cast<std::size_t>(k)];
    const auto& pk1 = w.perms[static_cast<std::size_t>(k + 1)];
    for (int c = 0; c < B.rows(); ++c)
      for (int p = 0; p < B.cols(); ++p)
        if (B(pk1[static_cast<std::size_t>(c)], pk[static_cast<std::size_t>(p)]) != B(c, p))
          return false;
  }
  return true;
}

SymmetryVerdict check_family_preserving(const LayeredGraph& g, long long node_budget) {
  SymmetryVerdict verdict;
  verdict.checked_depth = g.depth();
  SearchCtx ctx{g, node_budget};
  try {
    for (int n = 0; n <= g.depth(); ++n) {
      for (int forward_flag = 0; forward_flag < 2; ++forward_flag) {
        const bool forward = forward_flag == 0;
        for (const auto& [u, v] : neighbor_pairs(g, n, forward)) {
          PairWitness w;
          w.sphere = n;
          w.u = u;
          w.v = v;
          w.forward = forward;
          w.found = find_pair_automorphism(ctx, n, u, v, forward ? -1 : +1, w.perms);
          if (w.found && !verify_witness(g, w))
            throw Error(ErrorCode::NotSymmetric, "witness failed exact verification");
          if (!w.found) {
            verdict.family_preserving = Verdict::No;
            verdict.failing_pair = w;
            verdict.nodes_used = ctx.nodes;
            return verdict;
          }
          verdict.witnesses.push_back(std::move(w));
        }
      }
    }
  } catch (const BudgetExceeded&) {
    verdict.family_preserving = Verdict::Unknown;
    verdict.nodes_used = ctx.nodes;
    return verdict;
  }
  verdict.family_preserving = Verdict::Yes;
  verdict.nodes_used = ctx.nodes;
  return verdict;
}

CommutationReport check_lambda_commutation(const LayeredGraph& g, int n) {
  if (n < 0 || n > g.depth())
    throw Error(ErrorCode::IndexOutOfRange, "sphere " + std::to_string(n));
  std::vector<std::pair<int, IntMatrix>> mats;
  for (int j = 1; n + j <= g.depth(); ++j) mats.emplace_back(j, lambda_op(g, n, j));
  for (int j = 1; j <= n; ++j) mats.emplace_back(-j, lambda_op(g, n, -j));

  CommutationReport report;
  for (std::size_t a = 0; a < mats.size(); ++a)
    for (std::size_t b = a + 1; b < mats.size(); ++b) {
      const IntMatrix comm = mats[a].second * mats[b].second - mats[b].second * mats[a].second;
      const long long norm = comm.cwiseAbs().maxCoeff();
      if (norm > 0) {
        report.commuting = false;
        if (report.first_failing_sphere < 0) {
          report.first_failing_sphere = n;
          report.failing_j1 = mats[a].first;
          report.failing_j2 = mats[b].first;
        }
        report.max_commutator_norm = std::max(report.max_commutator_norm, norm);
      }
    }
  return report;
}

CommutationReport check_lambda_commutation_all(const LayeredGraph& g) {
  CommutationReport worst;
  for (int n = 0; n <= g.depth(); ++n) {
    const CommutationReport r = check_lambda_commutation(g, n);
    if (!r.commuting) {
      worst.commuting = false;
      if (worst.first_failing_sphere < 0) {
        worst.first_failing_sphere = r.first_failing_sphere;
        worst.failing_j1 = r.failing_j1;
        worst.failing_j2 = r.failing_j2;
      }
      worst.max_commutator_norm = std::max(worst.max_commutator_norm, r.max_commutator_norm);
    }
  }
  return worst;
}

}  // namespace qglap
