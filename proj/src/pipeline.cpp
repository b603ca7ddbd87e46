#include "qglap/pipeline.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

#include "qglap/io.hpp"
#include "qglap/presets.hpp"
#include "qglap/symmetry.hpp"

namespace qglap {

PipelineReport run_pipeline(const PipelineConfig& cfg) {
  if (!(cfg.k_max > 0) || !(cfg.compare_tol > 0) || !(cfg.mesh_h > 0) ||
      !(cfg.fd_rel_tol > 0) || cfg.fd_count < 1 || cfg.symmetry_budget < 1)
    throw Error(ErrorCode::InvalidParams, "pipeline tolerances and budgets must be positive");

  PipelineReport report;

  LayeredGraph graph;
  MetricLayers metric;
  if (!cfg.input_path.empty()) {
    auto loaded = graph_from_json(read_file(cfg.input_path));
    graph = std::move(loaded.first);
    metric = std::move(loaded.second);
  } else {
    auto gen = generate(cfg.preset, cfg.sizes, cfg.depth, cfg.length);
    graph = std::move(gen.graph);
    metric = std::move(gen.metric);
  }

  std::filesystem::create_directories(cfg.out_dir);
  const auto out = [&](const std::string& name) { return cfg.out_dir + "/" + name; };

  const SymmetryVerdict sym = check_family_preserving(graph, cfg.symmetry_budget);
  report.family_preserving = sym.family_preserving;
  if (sym.family_preserving != Verdict::Yes) {
    report.exit_code = 3;
    std::ostringstream msg;
    if (sym.family_preserving == Verdict::Unknown) {
      msg << "symmetry check exceeded the node budget (" << sym.nodes_used << " nodes)";
    } else {
      msg << "not family preserving";
      if (sym.failing_pair)
        msg << ": " << (sym.failing_pair->forward ? "forward" : "backward") << " pair ("
            << sym.failing_pair->u << ", " << sym.failing_pair->v << ") at sphere "
            << sym.failing_pair->sphere;
    }
    report.message = msg.str();
    return report;
  }

  report.bad_gens = bad_generations(graph);
  report.balanced_already = report.bad_gens.empty();
  BalanceResult bal = balance(graph, metric);
  write_file(out("graph_balanced.json"), graph_to_json_with_origin(bal));
  const LayeredGraph& bg = bal.graph;
  const MetricLayers& bm = bal.metric;

  const DiscreteDecomposition dec = decompose_discrete(bg);
  write_file(out("branches.json"), branches_to_json(dec));
  report.vertex_total = bg.total_vertices();
  report.branch_count = static_cast<int>(dec.branches.size());
  for (const Branch& b : dec.branches) report.chain_total += b.chain_length();

  for (const Branch& b : dec.branches)
    report.operators.push_back(build_reduced_operator(bg, bm, b));
  write_file(out("operators.json"), operators_to_json(report.operators));

  for (const ReducedOperator& op : report.operators)
    report.reduced.push_back(reduced_spectrum(op, cfg.k_max, "branch-" + std::to_string(op.r)));
  report.full = full_spectrum_secular(bg, bm, cfg.k_max);

  if (cfg.emit_csv) {
    write_file(out("spectrum_parts.csv"), spectrum_to_csv(report.reduced));
    write_file(out("spectrum_full.csv"), spectrum_to_csv({report.full}));
  }
  if (cfg.emit_dot) {
    write_file(out("graph.dot"), graph_to_dot(bg));
    for (const Branch& b : dec.branches) {
      const ConeProfile profile = cone_profiles(bg, b.n_r);
      const EdgeWeights w = lift_weights(bg, b, profile);
      write_file(out("weights_branch" + std::to_string(b.r) + ".dot"), weights_to_dot(bg, w));
    }
  }

  report.comparison = compare_spectra(report.full, report.reduced, cfg.compare_tol);

  if (!cfg.skip_fd) {
    report.fd = full_spectrum_fd(bg, bm, cfg.mesh_h, cfg.fd_count);
    if (cfg.emit_csv) write_file(out("spectrum_fd.csv"), spectrum_to_csv({*report.fd}));
    std::vector<double> secular_k;
    for (const auto& e : report.full.entries)
      for (int i = 0; i < e.multiplicity; ++i) secular_k.push_back(e.k);
    const std::size_t n = std::min(secular_k.size(), report.fd->entries.size());
    for (std::size_t i = 0; i < n; ++i) {
      const double kk = secular_k[i];
      const double rel = std::abs(report.fd->entries[i].k - kk) / std::max(1e-12, kk);
      report.fd_max_rel_dev = std::max(report.fd_max_rel_dev, rel);
    }
    report.fd_pass = report.fd_max_rel_dev <= cfg.fd_rel_tol;
  }

  if (!report.comparison.pass || !report.fd_pass) {
    report.exit_code = 2;
    report.message = "spectral comparison failed";
  } else {
    report.message = "ok";
  }
  write_file(out("report.json"), report_to_json(report));
  return report;
}

std::string report_to_json(const PipelineReport& report) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"family_preserving\": \""
     << (report.family_preserving == Verdict::Yes
             ? "yes"
             : report.family_preserving == Verdict::No ? "no" : "unknown")
     << "\",\n";
  os << "  \"balanced_already\": " << (report.balanced_already ? "true" : "false") << ",\n";
  os << "  \"bad_generations\": [";
  for (std::size_t i = 0; i < report.bad_gens.size(); ++i)
    os << (i ? ", " : "") << report.bad_gens[i];
  os << "],\n";
  os << "  \"vertex_total\": " << report.vertex_total << ",\n";
  os << "  \"chain_total\": " << report.chain_total << ",\n";
  os << "  \"branch_count\": " << report.branch_count << ",\n";
  os << "  \"windows\": [";
  for (std::size_t i = 0; i < report.operators.size(); ++i) {
    const auto& op = report.operators[i];
    os << (i ? ", " : "") << "{\"r\": " << op.r << ", \"a\": " << format_double(op.a)
       << ", \"b\": " << format_double(op.b) << "}";
  }
  os << "],\n";
  long long reduced_total = 0;
  for (const Spectrum& s : report.reduced) reduced_total += s.total_count();
  os << "  \"reduced_eigenvalue_total\": " << reduced_total << ",\n";
  os << "  \"full_eigenvalue_total\": " << report.full.total_count() << ",\n";
  os << "  \"comparison\": {\"pass\": " << (report.comparison.pass ? "true" : "false")
     << ", \"matched\": " << report.comparison.matched
     << ", \"max_deviation\": " << format_double(report.comparison.max_deviation)
     << ", \"unmatched_full\": " << report.comparison.unmatched_full.size()
     << ", \"unmatched_parts\": " << report.comparison.unmatched_parts.size() << "},\n";
  os << "  \"fd_max_rel_dev\": " << format_double(report.fd_max_rel_dev) << ",\n";
  os << "  \"fd_pass\": " << (report.fd_pass ? "true" : "false") << ",\n";
  os << "  \"exit_code\": " << report.exit_code << ",\n";
  os << "  \"message\": \"" << report.message << "\"\n";
  os << "}\n";
  return os.str();
}

}  // namespace qglap
