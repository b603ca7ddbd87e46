#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qglap/balance.hpp"
#include "qglap/decompose.hpp"
#include "qglap/graph.hpp"
#include "qglap/reduction.hpp"
#include "qglap/spectral.hpp"
#include "qglap/symmetry.hpp"

namespace qglap {

struct PipelineConfig {
  // input: either a preset or a graph JSON file
  std::string preset;            // empty when input_path is used
  std::vector<int> sizes;        // preset integer parameters
  int depth = 5;
  double length = 1.0;
  std::string input_path;

  double k_max = 10.0;
  double mesh_h = 1.0 / 64.0;
  int fd_count = 10;
  double compare_tol = 1e-8;
  double fd_rel_tol = 5e-3;

  bool skip_fd = false;
  bool emit_dot = false;
  bool emit_csv = true;
  std::string out_dir = ".";

  long long symmetry_budget = 10'000'000;
};

struct PipelineReport {
  Verdict family_preserving = Verdict::Unknown;
  bool balanced_already = false;
  std::vector<int> bad_gens;

  long long vertex_total = 0;
  long long chain_total = 0;
  int branch_count = 0;

  std::vector<ReducedOperator> operators;
  std::vector<Spectrum> reduced;   // one per branch
  Spectrum full;
  std::optional<Spectrum> fd;

  CompareReport comparison;
  double fd_max_rel_dev = 0.0;
  bool fd_pass = true;

  int exit_code = 0; // 0 ok, 2 comparison failure, 3 symmetry failure, 4 io
  std::string message;
};

/// generate/load -> validate -> symmetry check -> balance -> discrete
/// decomposition -> reduced operators -> spectra -> comparison; writes the
/// artifacts (JSON/CSV/DOT) under cfg.out_dir and returns the report.
PipelineReport run_pipeline(const PipelineConfig& cfg);

std::string report_to_json(const PipelineReport& report);

}  // namespace qglap
