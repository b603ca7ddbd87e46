#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Core>

#include "qglap/balance.hpp"
#include "qglap/decompose.hpp"
#include "qglap/io.hpp"
#include "qglap/pipeline.hpp"
#include "qglap/presets.hpp"
#include "qglap/reduction.hpp"
#include "qglap/spectral.hpp"
#include "qglap/symmetry.hpp"

namespace {

using namespace qglap;

int cmd_gen(const std::string& preset, const std::vector<int>& sizes, int depth, double length,
            const std::string& out_path) {
  const GeneratedGraph gen = generate(preset, sizes, depth, length);
  write_file(out_path, graph_to_json(gen.graph, gen.metric));
  std::cout << "wrote " << out_path << " (" << gen.graph.num_spheres() << " spheres, "
            << gen.graph.total_vertices() << " vertices)\n";
  return 0;
}

int cmd_check(const std::string& input, bool algebraic_only, long long budget) {
  const auto [graph, metric] = graph_from_json(read_file(input));
  (void)metric;

  const CommutationReport comm = check_lambda_commutation_all(graph);
  std::cout << "lambda-commutation: " << (comm.commuting ? "pass" : "FAIL")
            << " (max commutator norm " << comm.max_commutator_norm << ")\n";
  if (!comm.commuting)
    std::cout << "  first failure at sphere " << comm.first_failing_sphere << ", pair ("
              << comm.failing_j1 << ", " << comm.failing_j2 << ")\n";
  if (algebraic_only) return comm.commuting ? 0 : 3;

  const SymmetryVerdict verdict = check_family_preserving(graph, budget);
  switch (verdict.family_preserving) {
    case Verdict::Yes:
      std::cout << "family-preserving: yes (" << verdict.witnesses.size() << " pairs, "
                << verdict.nodes_used << " search nodes)\n";
      return 0;
    case Verdict::No:
      std::cout << "family-preserving: no";
      if (verdict.failing_pair)
        std::cout << " — " << (verdict.failing_pair->forward ? "forward" : "backward")
                  << " pair (" << verdict.failing_pair->u << ", " << verdict.failing_pair->v
                  << ") at sphere " << verdict.failing_pair->sphere << " has no automorphism";
      std::cout << "\n";
      return 3;
    default:
      std::cout << "family-preserving: unknown (budget of " << budget << " nodes exceeded)\n";
      return 3;
  }
}

int cmd_balance(const std::string& input, const std::string& out_path) {
  const auto [graph, metric] = graph_from_json(read_file(input));
  const auto bad = bad_generations(graph);
  const BalanceResult bal = balance(graph, metric);
  write_file(out_path, graph_to_json_with_origin(bal));
  std::cout << "bad generations:";
  for (int n : bad) std::cout << " " << n;
  if (bad.empty()) std::cout << " none";
  std::cout << "\nwrote " << out_path << " (" << bal.graph.num_spheres() << " spheres)\n";
  return 0;
}

int cmd_decompose(const std::string& input, const std::string& out_path) {
  const auto [graph, metric] = graph_from_json(read_file(input));
  (void)metric;
  const DiscreteDecomposition dec = decompose_discrete(graph);
  write_file(out_path, branches_to_json(dec));
  std::cout << "wrote " << out_path << " (" << dec.branches.size() << " branches, chain total ";
  long long total = 0;
  for (const Branch& b : dec.branches) total += b.chain_length();
  std::cout << total << " = vertex count " << graph.total_vertices() << ")\n";
  return 0;
}

int cmd_reduce(const std::string& input, const std::string& branches_path,
               const std::string& out_path, const std::string& dot_dir) {
  const auto [graph, metric] = graph_from_json(read_file(input));
  const DiscreteDecomposition dec = branches_from_json(read_file(branches_path));
  std::vector<ReducedOperator> ops;
  for (const Branch& b : dec.branches) ops.push_back(build_reduced_operator(graph, metric, b));
  write_file(out_path, operators_to_json(ops));
  if (!dot_dir.empty()) {
    for (const Branch& b : dec.branches) {
      const ConeProfile profile = cone_profiles(graph, b.n_r);
      const EdgeWeights w = lift_weights(graph, b, profile);
      write_file(dot_dir + "/weights_branch" + std::to_string(b.r) + ".dot",
                 weights_to_dot(graph, w));
    }
  }
  std::cout << "wrote " << out_path << " (" << ops.size() << " operators)\n";
  return 0;
}

int cmd_spectrum(const std::string& ops_path, double k_max, const std::string& out_path) {
  const std::vector<ReducedOperator> ops = operators_from_json(read_file(ops_path));
  std::vector<Spectrum> spectra;
  for (const ReducedOperator& op : ops)
    spectra.push_back(reduced_spectrum(op, k_max, "branch-" + std::to_string(op.r)));
  write_file(out_path, spectrum_to_csv(spectra));
  long long total = 0;
  for (const Spectrum& s : spectra) total += s.total_count();
  std::cout << "wrote " << out_path << " (" << total << " eigenvalues below k=" << k_max << ")\n";
  return 0;
}

int cmd_spectrum_full(const std::string& input, double k_max, const std::string& out_path,
                      const std::string& method, double mesh, int count) {
  const auto [graph, metric] = graph_from_json(read_file(input));
  Spectrum spectrum;
  if (method == "secular") {
    spectrum = full_spectrum_secular(graph, metric, k_max);
  } else if (method == "fd") {
    spectrum = full_spectrum_fd(graph, metric, mesh, count);
  } else {
    std::cerr << "unknown method '" << method << "'\n";
    return 1;
  }
  write_file(out_path, spectrum_to_csv({spectrum}));
  std::cout << "wrote " << out_path << " (" << spectrum.total_count() << " eigenvalues)\n";
  return 0;
}

int cmd_compare(const std::string& full_path, const std::string& parts_path, double tol) {
  const auto fulls = spectrum_from_csv(read_file(full_path));
  if (fulls.size() != 1) {
    std::cerr << "expected exactly one source in " << full_path << "\n";
    return 1;
  }
  const auto parts = spectrum_from_csv(read_file(parts_path));
  const CompareReport rep = compare_spectra(fulls[0], parts, tol);
  std::cout << "matched " << rep.matched << " eigenvalue pairs, max deviation "
            << format_double(rep.max_deviation) << "\n";
  for (double k : rep.unmatched_full) std::cout << "  full-only k=" << format_double(k) << "\n";
  for (double k : rep.unmatched_parts) std::cout << "  parts-only k=" << format_double(k) << "\n";
  std::cout << (rep.pass ? "PASS" : "FAIL") << "\n";
  return rep.pass ? 0 : 2;
}

int cmd_pipeline(const PipelineConfig& cfg) {
  const PipelineReport report = run_pipeline(cfg);
  std::cout << report_to_json(report);
  return report.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* threads = std::getenv("QGLAP_THREADS"))
    Eigen::setNbThreads(std::max(1, std::atoi(threads)));

  CLI::App app{"layered metric graph decomposition toolkit"};
  app.require_subcommand(1);

  std::string preset = "path", input, out_path, branches_path, ops_path, full_path, parts_path;
  std::string method = "secular", dot_dir;
  std::vector<int> sizes;
  int depth = -1, count = 10;
  double length = 1.0, k_max = 10.0, mesh = 1.0 / 64.0, tol = 1e-8;
  long long budget = 10'000'000;
  bool algebraic_only = false;

  auto* gen = app.add_subcommand("gen", "generate a preset graph");
  gen->add_option("--preset", preset, "path | antitree | radial_tree | braid | cyclic_quartet");
  gen->add_option("--sizes", sizes, "sphere sizes / branching numbers")->delimiter(',');
  gen->add_option("--depth", depth, "generation count");
  gen->add_option("--length", length, "edge length");
  gen->add_option("--out", out_path, "output graph JSON")->required();

  auto* check = app.add_subcommand("check", "symmetry checks");
  check->add_option("--input", input)->required();
  check->add_flag("--algebraic-only", algebraic_only, "only the commutation check");
  check->add_option("--budget", budget, "backtracking node budget");

  auto* bal = app.add_subcommand("balance", "insert midpoint spheres into bad generations");
  bal->add_option("--input", input)->required();
  bal->add_option("--out", out_path)->required();

  auto* dec = app.add_subcommand("decompose", "discrete decomposition into chains");
  dec->add_option("--input", input)->required();
  dec->add_option("--out", out_path)->required();

  auto* red = app.add_subcommand("reduce", "build the one-dimensional operators");
  red->add_option("--input", input)->required();
  red->add_option("--branches", branches_path)->required();
  red->add_option("--out", out_path)->required();
  red->add_option("--dot-dir", dot_dir, "also write per-branch weight DOT files");

  auto* spect = app.add_subcommand("spectrum", "eigenvalues of the reduced operators");
  spect->add_option("--ops", ops_path)->required();
  spect->add_option("--kmax", k_max);
  spect->add_option("--out", out_path)->required();

  auto* specf = app.add_subcommand("spectrum-full", "eigenvalues of the metric graph");
  specf->add_option("--input", input)->required();
  specf->add_option("--kmax", k_max);
  specf->add_option("--out", out_path)->required();
  specf->add_option("--method", method, "secular | fd");
  specf->add_option("--mesh", mesh, "fd mesh width");
  specf->add_option("--count", count, "fd eigenvalue count");

  auto* cmp = app.add_subcommand("compare", "match two spectrum CSVs as multisets");
  cmp->add_option("--full", full_path)->required();
  cmp->add_option("--parts", parts_path)->required();
  cmp->add_option("--tol", tol);

  PipelineConfig cfg;
  auto* pipe = app.add_subcommand("pipeline", "run every stage and compare spectra");
  pipe->add_option("--preset", cfg.preset);
  pipe->add_option("--sizes", cfg.sizes)->delimiter(',');
  pipe->add_option("--depth", cfg.depth);
  pipe->add_option("--length", cfg.length);
  pipe->add_option("--input", cfg.input_path, "graph JSON instead of a preset");
  pipe->add_option("--kmax", cfg.k_max);
  pipe->add_option("--mesh", cfg.mesh_h);
  pipe->add_option("--fd-count", cfg.fd_count);
  pipe->add_option("--tol", cfg.compare_tol);
  pipe->add_option("--out-dir", cfg.out_dir);
  pipe->add_flag("--skip-fd", cfg.skip_fd);
  pipe->add_flag("--emit-dot", cfg.emit_dot);
  bool no_csv = false;
  pipe->add_flag("--no-csv", no_csv);

  CLI11_PARSE(app, argc, argv);
  cfg.emit_csv = !no_csv;

  try {
    if (gen->parsed()) return cmd_gen(preset, sizes, depth, length, out_path);
    if (check->parsed()) return cmd_check(input, algebraic_only, budget);
    if (bal->parsed()) return cmd_balance(input, out_path);
    if (dec->parsed()) return cmd_decompose(input, out_path);
    if (red->parsed()) return cmd_reduce(input, branches_path, out_path, dot_dir);
    if (spect->parsed()) return cmd_spectrum(ops_path, k_max, out_path);
    if (specf->parsed()) return cmd_spectrum_full(input, k_max, out_path, method, mesh, count);
    if (cmp->parsed()) return cmd_compare(full_path, parts_path, tol);
    if (pipe->parsed()) return cmd_pipeline(cfg);
  } catch (const qglap::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == qglap::ErrorCode::IoError ? 4 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
