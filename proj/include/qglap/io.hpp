#pragma once

#include <string>
#include <vector>

#include "qglap/balance.hpp"
#include "qglap/decompose.hpp"
#include "qglap/graph.hpp"
#include "qglap/reduction.hpp"
#include "qglap/spectral.hpp"

namespace qglap {

// All floats are serialized with 17 significant digits, complex numbers as
// [re, im] pairs; identical inputs produce byte-identical artifacts.

std::string format_double(double x);

// {"spheres": [...], "edges": [[[w,v], ...] per generation], "lengths": [...]}
std::string graph_to_json(const LayeredGraph& g, const MetricLayers& m);
std::pair<LayeredGraph, MetricLayers> graph_from_json(const std::string& text);

std::string graph_to_json_with_origin(const BalanceResult& bal);

std::string branches_to_json(const DiscreteDecomposition& dec);
DiscreteDecomposition branches_from_json(const std::string& text);

std::string operators_to_json(const std::vector<ReducedOperator>& ops);
std::vector<ReducedOperator> operators_from_json(const std::string& text);

// columns: source, index, k, lambda, multiplicity
std::string spectrum_to_csv(const std::vector<Spectrum>& spectra);
std::vector<Spectrum> spectrum_from_csv(const std::string& text);

std::string graph_to_dot(const LayeredGraph& g);
std::string weights_to_dot(const LayeredGraph& g, const EdgeWeights& w);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace qglap
