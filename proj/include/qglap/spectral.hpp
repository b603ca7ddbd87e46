#pragma once

#include <string>
#include <vector>

#include "qglap/graph.hpp"
#include "qglap/reduction.hpp"

namespace qglap {

struct SpectrumEntry {
  double k = 0;         // wavenumber; eigenvalue is k*k
  int multiplicity = 1;
  std::string source;   // branch tag, "full-secular" or "full-fd"
};

struct Spectrum {
  std::vector<SpectrumEntry> entries; // strictly increasing in k
  double k_max = 0;

  long long count_below(double k) const;
  long long total_count() const;
};

/// All eigenvalues of the reduced operator in (0, k_max]. On each constant
/// piece the solution phase advances exactly by k * length; the jump (d, c)
/// maps the phase inside its pi-window, so the winding count is an exact
/// eigenvalue counter and each root is located by bisection on it.
/// Eigenvalues of a second-order problem with separated ends are simple.
Spectrum reduced_spectrum(const ReducedOperator& op, double k_max,
                          const std::string& source = "");

/// Eigenvalues of the metric-graph Laplacian with a Dirichlet root, Dirichlet
/// truncation sphere, and Kirchhoff interior vertices. Roots of the vertex
/// secular matrix M(k) (diagonal -sum k cot(k l), off-diagonal k / sin(k l))
/// are located by bisection on its negative-eigenvalue count, which is
/// monotone between the poles of cot; the count drop at a root equals the
/// multiplicity. At pole points (sin(k l) = 0) eigenfunctions are recovered
/// from the consistency system in vertex values and resonant sine amplitudes.
Spectrum full_spectrum_secular(const LayeredGraph& g, const MetricLayers& m, double k_max);

/// Second-order finite-difference oracle: lowest `count` eigenvalues of the
/// mesh Laplacian with flux-sum (Kirchhoff) vertex rows. h must divide every
/// generation length (to 1e-9 relative). O(h^2) accurate.
Spectrum full_spectrum_fd(const LayeredGraph& g, const MetricLayers& m, double mesh_h, int count);

struct CompareReport {
  bool pass = false;
  long long matched = 0;
  double max_deviation = 0;
  std::vector<double> unmatched_full;  // k values, multiplicity-expanded
  std::vector<double> unmatched_parts;
};

/// Greedy multiset matching of the union of the part spectra against the full
/// spectrum, within tol in k.
CompareReport compare_spectra(const Spectrum& full, const std::vector<Spectrum>& parts,
                              double tol);

}  // namespace qglap
