#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "utree/census.hpp"
#include "utree/polynomial.hpp"
#include "utree/pte.hpp"
#include "utree/tree.hpp"
#include "utree/verify.hpp"

namespace utree {

// ---------------------------------------------------------------------------
// Trees: {"n": N, "edges": [[u,v],...], "weights": [...], "core": [...]}
// weights defaults to all 1, core to none. Emission is canonical (fixed key
// order, no whitespace).
// ---------------------------------------------------------------------------

inline std::string tree_to_json(const WeightedTree& wt) {
  const Tree& t = wt.tree();
  std::ostringstream os;
  os << "{\"n\":" << t.vertex_count() << ",\"edges\":[";
  for (int e = 0; e < t.edge_count(); ++e) {
    if (e) os << ',';
    os << '[' << t.edges()[e].first << ',' << t.edges()[e].second << ']';
  }
  os << ']';
  bool unit = true;
  for (int w : wt.weights()) unit &= (w == 1);
  if (!unit) {
    os << ",\"weights\":[";
    for (int v = 0; v < t.vertex_count(); ++v) {
      if (v) os << ',';
      os << wt.weights()[v];
    }
    os << ']';
  }
  if (!t.core_edges().empty()) {
    os << ",\"core\":[";
    for (std::size_t i = 0; i < t.core_edges().size(); ++i) {
      if (i) os << ',';
      os << t.core_edges()[i];
    }
    os << ']';
  }
  os << '}';
  return os.str();
}

inline std::string tree_to_json(const Tree& t) {
  return tree_to_json(WeightedTree{t});
}

inline WeightedTree tree_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (!j.contains("n") || !j.contains("edges"))
    throw std::invalid_argument("tree JSON needs \"n\" and \"edges\"");
  const int n = j.at("n").get<int>();
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("edge must be a pair");
    edges.push_back({e[0].get<int>(), e[1].get<int>()});
  }
  std::vector<int> core;
  if (j.contains("core")) core = j.at("core").get<std::vector<int>>();
  Tree t(n, std::move(edges), std::nullopt, std::move(core));
  std::vector<int> weights(n, 1);
  if (j.contains("weights")) {
    weights = j.at("weights").get<std::vector<int>>();
    if (static_cast<int>(weights.size()) != n)
      throw std::invalid_argument("weights length must equal n");
  }
  return WeightedTree(std::move(t), std::move(weights));
}

// DOT export; core edges styled bold.
inline std::string tree_to_dot(const WeightedTree& wt,
                               const std::string& name = "T") {
  const Tree& t = wt.tree();
  std::vector<bool> is_core(t.edge_count(), false);
  for (int e : t.core_edges()) is_core[e] = true;
  bool unit = true;
  for (int w : wt.weights()) unit &= (w == 1);
  std::ostringstream os;
  os << "graph " << name << " {\n";
  if (!unit)
    for (int v = 0; v < t.vertex_count(); ++v)
      os << "  " << v << " [label=\"" << v << " w=" << wt.weights()[v]
         << "\"];\n";
  for (int e = 0; e < t.edge_count(); ++e) {
    os << "  " << t.edges()[e].first << " -- " << t.edges()[e].second;
    if (is_core[e]) os << " [style=bold]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

inline std::string tree_to_dot(const Tree& t, const std::string& name = "T") {
  return tree_to_dot(WeightedTree{t}, name);
}

// ---------------------------------------------------------------------------
// Polynomials: canonical emission lives on PartitionPolynomial; parsing here.
// ---------------------------------------------------------------------------

inline PartitionPolynomial polynomial_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  PartitionPolynomial poly;
  for (const auto& term : j.at("terms")) {
    std::vector<int> parts = term.at("partition").get<std::vector<int>>();
    const int ypow = term.value("ypow", 0);
    const BigInt coeff(term.at("coeff").get<std::string>());
    poly.add(Partition(std::move(parts)), ypow, coeff);
  }
  return poly;
}

// ---------------------------------------------------------------------------
// Sequences and certificates
// ---------------------------------------------------------------------------

inline std::string sequence_to_json(const IntSequence& s) {
  std::ostringstream os;
  os << '[';
  const auto asc = s.ascending();
  for (std::size_t i = 0; i < asc.size(); ++i) {
    if (i) os << ',';
    os << asc[i];
  }
  os << ']';
  return os.str();
}

inline std::string certificate_to_json(const PteCertificate& c,
                                       bool verified = true) {
  std::ostringstream os;
  os << "{\"a\":" << sequence_to_json(c.a) << ",\"b\":" << sequence_to_json(c.b)
     << ",\"degree\":" << c.degree
     << ",\"verified\":" << (verified ? "true" : "false") << '}';
  return os.str();
}

inline std::vector<long long> parse_int_list(const std::string& text) {
  std::vector<long long> out;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, ',')) {
    if (cur.empty()) throw std::invalid_argument("empty entry in integer list");
    std::size_t used = 0;
    const long long v = std::stoll(cur, &used);
    if (used != cur.size())
      throw std::invalid_argument("bad integer in list: " + cur);
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

inline std::string shape_to_json(const PteShape& s) {
  std::ostringstream os;
  os << "{\"alpha\":" << s.alpha << ",\"p\":[";
  for (std::size_t i = 0; i < s.p.size(); ++i) {
    if (i) os << ',';
    os << s.p[i];
  }
  os << "]}";
  return os.str();
}

inline std::string signature_to_json(const PteSignature& s) {
  std::ostringstream os;
  os << "{\"alpha\":" << s.alpha << ",\"n\":" << s.n << ",\"beta\":" << s.beta
     << '}';
  return os.str();
}

inline std::string report_to_json(const VerificationReport& r) {
  std::ostringstream os;
  os << "{\"shape_a\":" << shape_to_json(r.shape_a)
     << ",\"shape_b\":" << shape_to_json(r.shape_b)
     << ",\"degree\":" << r.degree << ",\"max_level\":" << r.max_level
     << ",\"u_equal_level\":" << r.u_equal_level << ",\"first_diff\":";
  if (r.first_diff) {
    os << "{\"partition\":[";
    const auto& parts = r.first_diff->partition.parts();
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) os << ',';
      os << parts[i];
    }
    os << "],\"ypow\":" << r.first_diff->y_grade << ",\"coeff_a\":\""
       << r.first_diff->coeff_a << "\",\"coeff_b\":\"" << r.first_diff->coeff_b
       << "\"}";
  } else {
    os << "null";
  }
  os << ",\"isomorphic\":" << (r.isomorphic ? "true" : "false")
     << ",\"closed_form_checked\":"
     << (r.closed_form_checked ? "true" : "false")
     << ",\"verified\":" << (r.verified ? "true" : "false") << '}';
  return os.str();
}

}  // namespace utree
