#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qglap/balance.hpp"
#include "qglap/decompose.hpp"
#include "qglap/io.hpp"
#include "qglap/presets.hpp"
#include "qglap/reduction.hpp"
#include "qglap/spectral.hpp"
#include "qglap/symmetry.hpp"

namespace py = pybind11;
using namespace qglap;

namespace {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    default: return "unknown";
  }
}

}  // namespace

PYBIND11_MODULE(qglap, m) {
  m.doc() = "layered metric graph decomposition toolkit";

  py::register_exception<Error>(m, "QglapError");

  py::class_<LayeredGraph>(m, "LayeredGraph")
      .def_readonly("sphere_sizes", &LayeredGraph::sphere_sizes)
      .def_readonly("biadjacency", &LayeredGraph::biadjacency)
      .def("depth", &LayeredGraph::depth)
      .def("total_vertices", &LayeredGraph::total_vertices)
      .def("edge_count", &LayeredGraph::edge_count)
      .def("generation_edges", &LayeredGraph::generation_edges)
      .def("__repr__", [](const LayeredGraph& g) {
        return "<LayeredGraph with " + std::to_string(g.num_spheres()) + " spheres, " +
               std::to_string(g.total_vertices()) + " vertices>";
      });

  py::class_<MetricLayers>(m, "MetricLayers")
      .def_readonly("lengths", &MetricLayers::lengths)
      .def("breakpoints", &MetricLayers::breakpoints)
      .def("height", &MetricLayers::height);

  py::class_<ConeProfile>(m, "ConeProfile")
      .def_readonly("n", &ConeProfile::n)
      .def_readonly("g", &ConeProfile::g)
      .def_readonly("w", &ConeProfile::w)
      .def_readonly("b_in", &ConeProfile::b_in)
      .def_readonly("b_out", &ConeProfile::b_out);

  py::class_<Branch>(m, "Branch")
      .def_readonly("r", &Branch::r)
      .def_readonly("n_r", &Branch::n_r)
      .def_readonly("chain", &Branch::chain)
      .def_readonly("lambda_tags", &Branch::lambda_tags)
      .def("chain_length", &Branch::chain_length);

  py::class_<DiscreteDecomposition>(m, "DiscreteDecomposition")
      .def_readonly("branches", &DiscreteDecomposition::branches)
      .def_readonly("depth", &DiscreteDecomposition::depth);

  py::class_<JumpEntry>(m, "JumpEntry")
      .def_readonly("j", &JumpEntry::j)
      .def_readonly("t", &JumpEntry::t)
      .def_readonly("d", &JumpEntry::d)
      .def_readonly("c", &JumpEntry::c);

  py::class_<ReducedOperator>(m, "ReducedOperator")
      .def_readonly("r", &ReducedOperator::r)
      .def_readonly("a", &ReducedOperator::a)
      .def_readonly("b", &ReducedOperator::b)
      .def_readonly("a_index", &ReducedOperator::a_index)
      .def_readonly("b_index", &ReducedOperator::b_index)
      .def_readonly("jumps", &ReducedOperator::jumps);

  py::class_<SpectrumEntry>(m, "SpectrumEntry")
      .def_readonly("k", &SpectrumEntry::k)
      .def_readonly("multiplicity", &SpectrumEntry::multiplicity)
      .def_readonly("source", &SpectrumEntry::source);

  py::class_<Spectrum>(m, "Spectrum")
      .def_readonly("entries", &Spectrum::entries)
      .def("count_below", &Spectrum::count_below)
      .def("total_count", &Spectrum::total_count);

  py::class_<CompareReport>(m, "CompareReport")
      .def_readonly("pass_", &CompareReport::pass)
      .def_readonly("matched", &CompareReport::matched)
      .def_readonly("max_deviation", &CompareReport::max_deviation)
      .def_readonly("unmatched_full", &CompareReport::unmatched_full)
      .def_readonly("unmatched_parts", &CompareReport::unmatched_parts);

  py::class_<GeneratedGraph>(m, "GeneratedGraph")
      .def_readonly("graph", &GeneratedGraph::graph)
      .def_readonly("metric", &GeneratedGraph::metric);

  py::class_<BalanceResult>(m, "BalanceResult")
      .def_readonly("graph", &BalanceResult::graph)
      .def_readonly("metric", &BalanceResult::metric)
      .def_readonly("sphere_origin", &BalanceResult::sphere_origin);

  m.def("generate", &generate, py::arg("preset"), py::arg("sizes") = std::vector<int>{},
        py::arg("depth") = -1, py::arg("length") = 1.0);
  m.def("make_path", &make_path, py::arg("depth"), py::arg("length") = 1.0);
  m.def("make_antitree", &make_antitree, py::arg("sizes"), py::arg("length") = 1.0);
  m.def("make_radial_tree", &make_radial_tree, py::arg("branching"), py::arg("depth") = -1,
        py::arg("length") = 1.0);
  m.def("make_braid", &make_braid, py::arg("depth"), py::arg("length") = 1.0);
  m.def("make_cyclic_quartet", &make_cyclic_quartet, py::arg("depth"), py::arg("length") = 1.0);

  m.def("validate_graph", &validate_graph);
  m.def("path_count_matrix", &path_count_matrix);
  m.def("cone_profiles", &cone_profiles);
  m.def("graph_to_json", &graph_to_json);
  m.def("graph_from_json", &graph_from_json);

  m.def("check_family_preserving",
        [](const LayeredGraph& g, long long budget) {
          const SymmetryVerdict v = check_family_preserving(g, budget);
          py::dict out;
          out["family_preserving"] = verdict_name(v.family_preserving);
          out["nodes_used"] = v.nodes_used;
          if (v.failing_pair) {
            py::dict pair;
            pair["sphere"] = v.failing_pair->sphere;
            pair["u"] = v.failing_pair->u;
            pair["v"] = v.failing_pair->v;
            pair["forward"] = v.failing_pair->forward;
            out["failing_pair"] = pair;
          }
          return out;
        },
        py::arg("graph"), py::arg("budget") = 10'000'000LL);
  m.def("check_lambda_commutation",
        [](const LayeredGraph& g, int n) {
          const CommutationReport r = check_lambda_commutation(g, n);
          return py::make_tuple(r.commuting, r.max_commutator_norm);
        });

  m.def("bad_generations", &bad_generations);
  m.def("balance", &balance);

  m.def("e_matrix", &e_matrix);
  m.def("lambda_op", &lambda_op);
  m.def("decompose_discrete",
        [](const LayeredGraph& g, bool mix_degenerate, std::uint64_t mix_seed) {
          DecomposeOptions opts;
          opts.mix_degenerate = mix_degenerate;
          opts.mix_seed = mix_seed;
          return decompose_discrete(g, opts);
        },
        py::arg("graph"), py::arg("mix_degenerate") = false, py::arg("mix_seed") = 0);
  m.def("branch_jacobi", [](const LayeredGraph& g, const Branch& b) {
    const JacobiData jd = branch_jacobi(g, b);
    return py::make_tuple(jd.diag, jd.offdiag);
  });

  m.def("jump_data", &jump_data);
  m.def("build_reduced_operator", &build_reduced_operator);
  m.def("lift_weights",
        [](const LayeredGraph& g, const Branch& b, const ConeProfile& p, int k) {
          return lift_weights(g, b, p, k).per_generation;
        },
        py::arg("graph"), py::arg("branch"), py::arg("profile"), py::arg("k") = 0);
  m.def("ns_reference_vector", &ns_reference_vector);

  m.def("reduced_spectrum", &reduced_spectrum, py::arg("op"), py::arg("k_max"),
        py::arg("source") = "");
  m.def("full_spectrum_secular", &full_spectrum_secular);
  m.def("full_spectrum_fd", &full_spectrum_fd);
  m.def("compare_spectra", &compare_spectra);
}
