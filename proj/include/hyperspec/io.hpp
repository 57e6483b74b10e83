#pragma once

#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperspec/analysis.hpp"
#include "hyperspec/error.hpp"
#include "hyperspec/hypergraph.hpp"
#include "hyperspec/spectrum.hpp"
#include "hyperspec/tensor.hpp"

namespace hyperspec {

using Json = nlohmann::ordered_json;

namespace detail {

/// A weight or coefficient given as a JSON number or as a "p/q" string.
/// Numbers are read through their decimal text, so 0.1 means 1/10.
inline Rational json_rational(const Json& j, const std::string& where) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number()) return parse_rational(j.dump());
  throw Error(ErrorCode::ParseError, where + ": expected a number or a \"p/q\" string");
}

inline const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::ParseError, where + ": missing \"" + key + "\"");
  return j.at(key);
}

inline Json parse_json(std::istream& in) {
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  return in;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Hypergraph files: {"vertices": [...], "edges": [{"vertices": [1, 2], "weight": 1}]}
// Vertex indices are 1-based. "vertices" may also be a vertex count.

inline RawHypergraph hypergraph_raw_from_json(const Json& j) {
  RawHypergraph raw;
  const auto& vs = detail::require(j, "vertices", "hypergraph");
  if (vs.is_number_unsigned()) {
    for (std::size_t v = 0; v < vs.get<std::size_t>(); ++v) raw.vertex_labels.push_back("v" + std::to_string(v + 1));
  } else if (vs.is_array()) {
    for (const auto& v : vs) {
      if (!v.is_string()) throw Error(ErrorCode::ParseError, "hypergraph: vertex labels must be strings");
      raw.vertex_labels.push_back(v.get<std::string>());
    }
  } else {
    throw Error(ErrorCode::ParseError, "hypergraph: \"vertices\" must be an array of labels or a count");
  }
  const auto& es = detail::require(j, "edges", "hypergraph");
  if (!es.is_array()) throw Error(ErrorCode::ParseError, "hypergraph: \"edges\" must be an array");
  for (std::size_t e = 0; e < es.size(); ++e) {
    const std::string where = "edge " + std::to_string(e + 1);
    const auto& members = detail::require(es[e], "vertices", where);
    if (!members.is_array()) throw Error(ErrorCode::ParseError, where + ": \"vertices\" must be an array");
    RawEdge edge;
    for (const auto& m : members) {
      if (!m.is_number_integer()) throw Error(ErrorCode::ParseError, where + ": vertex indices must be integers");
      edge.vertices.push_back(m.get<long long>() - 1);
    }
    edge.weight = es[e].contains("weight") ? detail::json_rational(es[e]["weight"], where) : Rational(1);
    raw.edges.push_back(std::move(edge));
  }
  return raw;
}

inline WeightedHypergraph read_hypergraph(std::istream& in) {
  return validate(hypergraph_raw_from_json(detail::parse_json(in)));
}

inline WeightedHypergraph read_hypergraph_file(const std::string& path) {
  auto in = detail::open_input(path);
  return read_hypergraph(in);
}

inline Json hypergraph_to_json(const WeightedHypergraph& g) {
  Json j;
  j["vertices"] = g.vertex_labels();
  Json edges = Json::array();
  for (const auto& e : g.edges()) {
    Json members = Json::array();
    for (auto v : e.support) members.push_back(v + 1);
    const bool integral = boost::multiprecision::denominator(e.weight) == 1;
    edges.push_back({{"vertices", members},
                     {"weight", integral ? Json(boost::multiprecision::numerator(e.weight).convert_to<long long>())
                                         : Json(to_string(e.weight))}});
  }
  j["edges"] = edges;
  return j;
}

// ---------------------------------------------------------------------------
// Tensor dump

inline Json tensor_to_json(const HypergraphTensor& t) {
  Json j;
  j["kind"] = to_string(t.kind());
  j["order"] = t.order();
  j["dimension"] = t.dimension();
  Json diag = Json::array();
  for (const auto& d : t.diagonal()) {
    Json c = {{"coefficient", d.value}};
    if (d.exact) c["exact"] = to_string(*d.exact);
    diag.push_back(c);
  }
  j["diagonal"] = diag;
  Json entries = Json::array();
  for (std::size_t i = 0; i < t.dimension(); ++i) {
    for (const auto& term : t.row(i)) {
      Json support = Json::array();
      for (auto v : term.support) support.push_back(v + 1);
      Json e = {{"row", i + 1}, {"support", support}, {"coefficient", term.coefficient.value}};
      if (term.coefficient.exact) e["exact"] = to_string(*term.coefficient.exact);
      entries.push_back(e);
    }
  }
  j["entries"] = entries;
  return j;
}

inline HypergraphTensor tensor_from_json(const Json& j) {
  try {
    const auto kind = parse_tensor_kind(detail::require(j, "kind", "tensor").get<std::string>());
    const auto order = detail::require(j, "order", "tensor").get<unsigned>();
    const auto dim = detail::require(j, "dimension", "tensor").get<std::size_t>();
    auto coefficient = [](const Json& c) {
      Coefficient out{c.at("coefficient").get<double>(), std::nullopt};
      if (c.contains("exact")) out.exact = parse_rational(c.at("exact").get<std::string>());
      return out;
    };
    std::vector<Coefficient> diagonal;
    for (const auto& d : detail::require(j, "diagonal", "tensor")) diagonal.push_back(coefficient(d));
    if (diagonal.size() != dim) throw Error(ErrorCode::ParseError, "tensor: diagonal length differs from dimension");
    std::vector<std::vector<RowTerm>> rows(dim);
    for (const auto& e : detail::require(j, "entries", "tensor")) {
      const auto row = e.at("row").get<std::size_t>();
      if (row < 1 || row > dim) throw Error(ErrorCode::ParseError, "tensor: row index out of range");
      VertexSet support;
      for (const auto& v : e.at("support")) {
        const auto idx = v.get<std::size_t>();
        if (idx < 1 || idx > dim) throw Error(ErrorCode::ParseError, "tensor: support index out of range");
        support.push_back(idx - 1);
      }
      std::sort(support.begin(), support.end());
      rows[row - 1].push_back(RowTerm{std::move(support), coefficient(e)});
    }
    return HypergraphTensor(kind, order, std::move(diagonal), std::move(rows));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("tensor: ") + e.what());
  }
}

inline HypergraphTensor read_tensor(std::istream& in) { return tensor_from_json(detail::parse_json(in)); }

// ---------------------------------------------------------------------------
// Spectrum file and plot data

inline Json spectrum_to_json(const SpectrumReport& report, TensorKind kind) {
  Json j;
  j["kind"] = to_string(kind);
  j["solver_stats"] = {{"seed", report.stats.seed},
                       {"paths_tracked", report.stats.paths_tracked},
                       {"finite", report.stats.finite},
                       {"at_infinity", report.stats.at_infinity},
                       {"singular", report.stats.singular},
                       {"failures", report.stats.failures},
                       {"possibly_incomplete", report.possibly_incomplete}};
  Json values = Json::array();
  for (const auto& e : report.eigenvalues) {
    Json v = {{"re", e.value.real()},
              {"im", e.value.imag()},
              {"is_real", e.is_real},
              {"from_singular", e.from_singular_endpoint},
              {"gm", e.geometric_multiplicity ? Json(*e.geometric_multiplicity) : Json(nullptr)},
              {"residual", e.residual}};
    Json vec = Json::array();
    for (const auto& c : e.eigenvector) vec.push_back({c.real(), c.imag()});
    v["eigenvector"] = vec;
    values.push_back(v);
  }
  j["eigenvalues"] = values;
  return j;
}

/// Two-column "re,im" scatter data, one eigenvalue per line.
inline void write_plot_csv(std::ostream& out, const SpectrumReport& report) {
  out << "re,im\n";
  out << std::setprecision(17);
  for (const auto& e : report.eigenvalues) out << e.value.real() << ',' << e.value.imag() << '\n';
}

// ---------------------------------------------------------------------------
// Check reports

inline Json check_to_json(const TheoremCheckResult& r) {
  Json j = {{"theorem_id", r.theorem_id}, {"passed", r.passed}, {"warning", r.warning}};
  Json list = Json::array();
  for (const auto& a : r.assertions) {
    list.push_back({{"description", a.description},
                    {"expected", a.expected},
                    {"observed", a.observed},
                    {"tolerance", a.tolerance},
                    {"passed", a.passed},
                    {"warning_only", a.warning_only}});
  }
  j["assertions"] = list;
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

inline Json check_report_to_json(const std::vector<TheoremCheckResult>& results) {
  Json j = Json::array();
  for (const auto& r : results) j.push_back(check_to_json(r));
  return j;
}

}  // namespace hyperspec
