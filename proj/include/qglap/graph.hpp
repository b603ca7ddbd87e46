#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qglap/errors.hpp"

namespace qglap {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Rooted layered graph stored as sphere sizes plus one biadjacency matrix per
/// generation. B_n has shape s_{n+1} x s_n with B_n(w, v) = 1 iff the edge
/// (v, w) exists, v in sphere n, w in sphere n+1. There are no intra-sphere
/// edges by representation, so every vertex's generation equals its distance
/// from the root.
struct LayeredGraph {
  std::vector<int> sphere_sizes;      // s_0 .. s_N, s_0 == 1
  std::vector<IntMatrix> biadjacency; // B_0 .. B_{N-1}

  int depth() const { return static_cast<int>(biadjacency.size()); }
  int num_spheres() const { return static_cast<int>(sphere_sizes.size()); }
  int sphere_size(int n) const;
  long long total_vertices() const;

  long long edge_count(int gen) const;

  // Canonical edge order within a generation: (parent, child) lexicographic.
  // Every per-edge quantity in this library is indexed this way.
  std::vector<std::pair<int, int>> generation_edges(int gen) const; // (parent v, child w)

  int backward_degree(int n, int v) const; // edges into (n, v) from sphere n-1
  int forward_degree(int n, int v) const;  // edges out of (n, v) to sphere n+1

  std::vector<int> parents(int n, int v) const;
  std::vector<int> children(int n, int v) const;

  // Vertices of sphere m comparable with vertex (n, v): ancestors for m < n,
  // descendants for m > n, {v} for m == n. Sorted ascending.
  std::vector<int> cone_at(int n, int v, int m) const;
};

struct MetricLayers {
  std::vector<double> lengths; // l_0 .. l_{N-1}, all > 0

  int depth() const { return static_cast<int>(lengths.size()); }
  // t_0 = 0, t_{k+1} = t_k + l_k
  std::vector<double> breakpoints() const;
  double height() const;
};

MetricLayers make_metric(const std::vector<double>& lengths);
MetricLayers uniform_metric(int depth, double length);

/// Per-band cone counts seen from sphere n. Band j is the open interval
/// (t_j, t_{j+1}), i.e. the generation-j edges.
///   g[j] = number of generation-j edges inside the cone of one vertex of
///          sphere n (the metric count of points at a band-j distance),
///   w[j] = number of sphere-n vertices comparable with a point on a
///          generation-j edge,
///   b_in[k] / b_out[k] = backward / forward degree of a sphere-k vertex.
/// All values are checked to be representative-independent.
struct ConeProfile {
  int n = 0;
  std::vector<long long> g;     // size depth()
  std::vector<long long> w;     // size depth()
  std::vector<long long> b_in;  // size num_spheres(), b_in[0] == 0
  std::vector<long long> b_out; // size num_spheres(), b_out[N] == 0
};

LayeredGraph validate_graph(const std::vector<int>& sphere_sizes,
                            const std::vector<IntMatrix>& biadjacency);

// Entry (u, v) = number of descending paths from sphere-n vertex v to
// sphere-m vertex u; exact overflow-checked integer arithmetic.
IntMatrix path_count_matrix(const LayeredGraph& g, int n, int m);

ConeProfile cone_profiles(const LayeredGraph& g, int n);

}  // namespace qglap
