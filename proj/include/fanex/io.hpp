#pragma once

#include "fanex/fan_detect.hpp"
#include "fanex/graph.hpp"
#include "fanex/linalg.hpp"
#include "fanex/oracle.hpp"
#include "fanex/rational.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace fanex {

using Json = nlohmann::json;

/// {"n": 4, "edges": [[0,1], ...]} with u < v.
inline Json graph_to_json(const Graph& g) {
  Json edges = Json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return {{"n", g.order()}, {"edges", edges}};
}

inline Graph graph_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
    throw std::invalid_argument("graph JSON needs \"n\" and \"edges\"");
  GraphBuilder b(j.at("n").get<int>());
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("graph JSON edge must be a pair");
    b.add_edge(e[0].get<int>(), e[1].get<int>());
  }
  return b.build();
}

/// {"copies": [{"center": c, "path": [...]}, ...]}
inline Json witness_to_json(const FanWitness& w) {
  Json copies = Json::array();
  for (const auto& c : w.copies) copies.push_back({{"center", c.center}, {"path", c.path}});
  return {{"copies", copies}};
}

inline FanWitness witness_from_json(const Json& j) {
  FanWitness w;
  for (const auto& c : j.at("copies")) w.copies.push_back({c.at("center").get<int>(), c.at("path").get<std::vector<int>>()});
  return w;
}

/// Row-major array of "p/q" strings.
inline Json matrix_to_json(const RationalMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_fraction_string(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline RationalMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix JSON must be a nonempty array of rows");
  const std::size_t cols = j[0].size();
  RationalMatrix m(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw std::invalid_argument("ragged matrix JSON");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = parse_rational(j[i][c].get<std::string>());
  }
  return m;
}

/// Coefficients as "p/q" strings, constant term first.
inline Json polynomial_to_json(const Polynomial& p) {
  Json out = Json::array();
  for (const auto& c : p.coeffs) out.push_back(to_fraction_string(c));
  return out;
}

inline Polynomial polynomial_from_json(const Json& j) {
  Polynomial p;
  for (const auto& c : j) p.coeffs.push_back(parse_rational(c.get<std::string>()));
  return p;
}

inline Json census_to_json(const CensusResult& c) {
  Json j{{"n", c.n}, {"t", c.params.t}, {"k", c.params.k}};
  if (c.kind == CensusKind::ex) j["max_edges"] = c.max_edges;
  else j["max_rho"] = c.max_rho;
  j["witnesses"] = c.witnesses;
  j["scanned"] = c.scanned;
  j["wall_ms"] = c.wall_ms;
  return j;
}

inline CensusResult census_from_json(const Json& j) {
  CensusResult c;
  c.n = j.at("n").get<int>();
  c.params = {j.at("t").get<int>(), j.at("k").get<int>()};
  if (j.contains("max_edges")) {
    c.kind = CensusKind::ex;
    c.max_edges = j.at("max_edges").get<std::int64_t>();
  } else {
    c.kind = CensusKind::spex;
    c.max_rho = j.at("max_rho").get<double>();
  }
  c.witnesses = j.at("witnesses").get<std::vector<std::string>>();
  c.scanned = j.at("scanned").get<std::uint64_t>();
  c.wall_ms = j.at("wall_ms").get<double>();
  return c;
}

}  // namespace fanex
