#pragma once

// Test-side oracles, kept independent of the library's traversal helpers:
// everything here walks raw biadjacency entries directly.

#include <complex>
#include <set>
#include <vector>

#include "qglap/graph.hpp"

namespace oracles {

using qglap::IntMatrix;
using qglap::LayeredGraph;

// number of descending paths from (n, v) to (m, u) by depth-first enumeration
inline long long count_paths_dfs(const LayeredGraph& g, int n, int v, int m, int u) {
  if (n == m) return v == u ? 1 : 0;
  long long total = 0;
  const IntMatrix& B = g.biadjacency[static_cast<std::size_t>(n)];
  for (int w = 0; w < B.rows(); ++w)
    if (B(w, v)) total += count_paths_dfs(g, n + 1, w, m, u);
  return total;
}

// vertex set of sphere m comparable with (n, v), by breadth-first marking
inline std::set<int> cone_set(const LayeredGraph& g, int n, int v, int m) {
  std::set<int> cur{v};
  int level = n;
  while (level != m) {
    std::set<int> next;
    if (m > n) {
      const IntMatrix& B = g.biadjacency[static_cast<std::size_t>(level)];
      for (int x : cur)
        for (int w = 0; w < B.rows(); ++w)
          if (B(w, x)) next.insert(w);
      ++level;
    } else {
      const IntMatrix& B = g.biadjacency[static_cast<std::size_t>(level - 1)];
      for (int x : cur)
        for (int p = 0; p < B.cols(); ++p)
          if (B(x, p)) next.insert(p);
      --level;
    }
    cur = std::move(next);
  }
  return cur;
}

// number of generation-j edges inside the cone of (n, v): an edge belongs to
// the cone iff both endpoints are comparable with v
inline long long cone_band_edges(const LayeredGraph& g, int n, int v, int j) {
  long long total = 0;
  const IntMatrix& B = g.biadjacency[static_cast<std::size_t>(j)];
  for (int p = 0; p < B.cols(); ++p)
    for (int w = 0; w < B.rows(); ++w) {
      if (!B(w, p)) continue;
      const bool head_in = j >= n ? cone_set(g, j, p, n).count(v) > 0
                                  : cone_set(g, n, v, j).count(p) > 0;
      const bool tail_in = j + 1 >= n ? cone_set(g, j + 1, w, n).count(v) > 0
                                      : cone_set(g, n, v, j + 1).count(w) > 0;
      if (head_in && tail_in) ++total;
    }
  return total;
}

}  // namespace oracles
