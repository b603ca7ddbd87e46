#include "qglap/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace qglap {

using nlohmann::json;

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

std::string complex_pair(const Complex& z) {
  return "[" + format_double(z.real()) + ", " + format_double(z.imag()) + "]";
}

}  // namespace

std::string graph_to_json(const LayeredGraph& g, const MetricLayers& m) {
  std::ostringstream os;
  os << "{\n  \"spheres\": [";
  for (std::size_t i = 0; i < g.sphere_sizes.size(); ++i)
    os << (i ? ", " : "") << g.sphere_sizes[i];
  os << "],\n  \"edges\": [\n";
  for (int n = 0; n < g.depth(); ++n) {
    os << "    [";
    const auto edges = g.generation_edges(n);
    for (std::size_t e = 0; e < edges.size(); ++e)
      os << (e ? ", " : "") << "[" << edges[e].second << ", " << edges[e].first << "]";
    os << "]" << (n + 1 < g.depth() ? "," : "") << "\n";
  }
  os << "  ],\n  \"lengths\": [";
  for (std::size_t i = 0; i < m.lengths.size(); ++i)
    os << (i ? ", " : "") << format_double(m.lengths[i]);
  os << "]\n}\n";
  return os.str();
}

std::pair<LayeredGraph, MetricLayers> graph_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::IoError, std::string("bad JSON: ") + e.what());
  }
  if (!doc.contains("spheres") || !doc.contains("edges") || !doc.contains("lengths"))
    throw Error(ErrorCode::IoError, "graph JSON needs spheres, edges, lengths");

  std::vector<int> sizes = doc["spheres"].get<std::vector<int>>();
  std::vector<IntMatrix> biadj;
  const auto& edges = doc["edges"];
  if (static_cast<std::size_t>(edges.size()) + 1 != sizes.size())
    throw Error(ErrorCode::IoError, "edges must list one generation per sphere gap");
  for (std::size_t n = 0; n + 1 < sizes.size(); ++n) {
    IntMatrix B = IntMatrix::Zero(sizes[n + 1], sizes[n]);
    for (const auto& pair : edges[n]) {
      const int w = pair.at(0).get<int>();
      const int v = pair.at(1).get<int>();
      if (w < 0 || w >= sizes[n + 1] || v < 0 || v >= sizes[n])
        throw Error(ErrorCode::IoError, "edge index out of range in generation " +
                                            std::to_string(n));
      B(w, v) += 1;
    }
    biadj.push_back(B);
  }
  std::vector<double> lengths = doc["lengths"].get<std::vector<double>>();
  return {validate_graph(sizes, biadj), make_metric(lengths)};
}

std::string graph_to_json_with_origin(const BalanceResult& bal) {
  std::string base = graph_to_json(bal.graph, bal.metric);
  base.pop_back(); // trailing newline
  base.pop_back(); // closing brace
  std::ostringstream os;
  os << base << ",\n  \"sphere_origin\": [";
  for (std::size_t i = 0; i < bal.sphere_origin.size(); ++i)
    os << (i ? ", " : "") << bal.sphere_origin[i];
  os << "]\n}\n";
  return os.str();
}

std::string branches_to_json(const DiscreteDecomposition& dec) {
  std::ostringstream os;
  os << "{\n  \"depth\": " << dec.depth << ",\n  \"branches\": [\n";
  for (std::size_t bi = 0; bi < dec.branches.size(); ++bi) {
    const Branch& b = dec.branches[bi];
    os << "    {\"r\": " << b.r << ", \"n_r\": " << b.n_r << ", \"lambda_tags\": [";
    for (std::size_t t = 0; t < b.lambda_tags.size(); ++t)
      os << (t ? ", " : "") << "[" << b.lambda_tags[t].first << ", "
         << format_double(b.lambda_tags[t].second) << "]";
    os << "], \"chain\": [";
    for (std::size_t k = 0; k < b.chain.size(); ++k) {
      os << (k ? ", " : "") << "[";
      const CVector& v = b.chain[k];
      for (int i = 0; i < v.size(); ++i) os << (i ? ", " : "") << complex_pair(v[i]);
      os << "]";
    }
    os << "]}" << (bi + 1 < dec.branches.size() ? "," : "") << "\n";
  }
  os << "  ]\n}\n";
  return os.str();
}

DiscreteDecomposition branches_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::IoError, std::string("bad JSON: ") + e.what());
  }
  DiscreteDecomposition dec;
  dec.depth = doc.at("depth").get<int>();
  for (const auto& jb : doc.at("branches")) {
    Branch b;
    b.r = jb.at("r").get<int>();
    b.n_r = jb.at("n_r").get<int>();
    for (const auto& tag : jb.at("lambda_tags"))
      b.lambda_tags.emplace_back(tag.at(0).get<int>(), tag.at(1).get<double>());
    for (const auto& jv : jb.at("chain")) {
      CVector v(jv.size());
      for (std::size_t i = 0; i < jv.size(); ++i)
        v[static_cast<int>(i)] = Complex(jv[i].at(0).get<double>(), jv[i].at(1).get<double>());
      b.chain.push_back(std::move(v));
    }
    dec.branches.push_back(std::move(b));
  }
  return dec;
}

std::string operators_to_json(const std::vector<ReducedOperator>& ops) {
  std::ostringstream os;
  os << "{\n  \"operators\": [\n";
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const ReducedOperator& op = ops[i];
    os << "    {\"r\": " << op.r << ", \"a_index\": " << op.a_index
       << ", \"b_index\": " << op.b_index << ", \"a\": " << format_double(op.a)
       << ", \"b\": " << format_double(op.b) << ", \"breakpoints\": [";
    for (std::size_t jj = 0; jj < op.jumps.size(); ++jj) {
      const JumpEntry& je = op.jumps[jj];
      os << (jj ? ", " : "") << "{\"j\": " << je.j << ", \"t\": " << format_double(je.t)
         << ", \"d\": " << format_double(je.d) << ", \"c\": " << format_double(je.c) << "}";
    }
    os << "]}" << (i + 1 < ops.size() ? "," : "") << "\n";
  }
  os << "  ]\n}\n";
  return os.str();
}

std::vector<ReducedOperator> operators_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::IoError, std::string("bad JSON: ") + e.what());
  }
  std::vector<ReducedOperator> ops;
  for (const auto& jo : doc.at("operators")) {
    ReducedOperator op;
    op.r = jo.at("r").get<int>();
    op.a_index = jo.at("a_index").get<int>();
    op.b_index = jo.at("b_index").get<int>();
    op.a = jo.at("a").get<double>();
    op.b = jo.at("b").get<double>();
    for (const auto& jj : jo.at("breakpoints")) {
      JumpEntry je;
      je.j = jj.at("j").get<int>();
      je.t = jj.at("t").get<double>();
      je.d = jj.at("d").get<double>();
      je.c = jj.at("c").get<double>();
      op.jumps.push_back(je);
    }
    ops.push_back(std::move(op));
  }
  return ops;
}

std::string spectrum_to_csv(const std::vector<Spectrum>& spectra) {
  std::ostringstream os;
  os << "source,index,k,lambda,multiplicity\n";
  for (const Spectrum& spec : spectra) {
    int index = 0;
    for (const SpectrumEntry& e : spec.entries) {
      os << e.source << "," << index++ << "," << format_double(e.k) << ","
         << format_double(e.k * e.k) << "," << e.multiplicity << "\n";
    }
  }
  return os.str();
}

std::vector<Spectrum> spectrum_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorCode::IoError, "empty CSV");
  std::map<std::string, Spectrum> by_source;
  std::vector<std::string> order;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string source, index, k, lambda, mult;
    if (!std::getline(ls, source, ',') || !std::getline(ls, index, ',') ||
        !std::getline(ls, k, ',') || !std::getline(ls, lambda, ',') || !std::getline(ls, mult))
      throw Error(ErrorCode::IoError, "bad CSV row: " + line);
    if (by_source.find(source) == by_source.end()) order.push_back(source);
    by_source[source].entries.push_back({std::stod(k), std::stoi(mult), source});
  }
  std::vector<Spectrum> out;
  for (const std::string& s : order) out.push_back(std::move(by_source[s]));
  return out;
}

std::string graph_to_dot(const LayeredGraph& g) {
  std::ostringstream os;
  os << "digraph layered {\n  rankdir=TB;\n  node [shape=circle, fontsize=10];\n";
  for (int n = 0; n < g.num_spheres(); ++n) {
    os << "  { rank=same;";
    for (int v = 0; v < g.sphere_size(n); ++v) os << " s" << n << "_" << v << ";";
    os << " }\n";
  }
  for (int n = 0; n < g.depth(); ++n)
    for (const auto& [v, w] : g.generation_edges(n))
      os << "  s" << n << "_" << v << " -> s" << n + 1 << "_" << w << ";\n";
  os << "}\n";
  return os.str();
}

std::string weights_to_dot(const LayeredGraph& g, const EdgeWeights& w) {
  std::ostringstream os;
  os << "digraph weights {\n  rankdir=TB;\n  node [shape=circle, fontsize=10];\n";
  for (int n = 0; n < g.num_spheres(); ++n) {
    os << "  { rank=same;";
    for (int v = 0; v < g.sphere_size(n); ++v) os << " s" << n << "_" << v << ";";
    os << " }\n";
  }
  for (int n = 0; n < g.depth(); ++n) {
    const auto edges = g.generation_edges(n);
    const CVector& vals = w.per_generation[static_cast<std::size_t>(n)];
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const Complex z = vals[static_cast<int>(e)];
      char label[64];
      if (std::abs(z.imag()) < 1e-14)
        std::snprintf(label, sizeof(label), "%.4g", z.real());
      else
        std::snprintf(label, sizeof(label), "%.4g%+.4gi", z.real(), z.imag());
      os << "  s" << n << "_" << edges[e].first << " -> s" << n + 1 << "_" << edges[e].second
         << " [label=\"" << label << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  out << content;
  if (!out) throw Error(ErrorCode::IoError, "short write to " + path);
}

}  // namespace qglap
