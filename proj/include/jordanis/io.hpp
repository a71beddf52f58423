#pragma once

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "jordanis/algebra.hpp"
#include "jordanis/geometry.hpp"

namespace jordanis {

/// On-disk description of an algebra: dimension, sparse product table with
/// 1-based indices, optional metric and basis names.
struct AlgebraFile {
  Algebra algebra{0};
  std::optional<Mat> metric;
  std::vector<std::string> names;
  bool commutative_close = false;
};

namespace detail {

inline const nlohmann::json& field(const nlohmann::json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

}  // namespace detail

inline AlgebraFile parse_algebra_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("top level must be an object");
  const auto& dim_field = detail::field(j, "dim");
  if (!dim_field.is_number_integer() || dim_field.get<int>() <= 0)
    throw ParseError("'dim' must be a positive integer");
  const int n = dim_field.get<int>();

  AlgebraFile out;
  out.commutative_close = j.value("commutative_close", false);
  Algebra a(n, j.value("label", std::string{}));
  std::set<std::pair<int, int>> seen;
  const auto& products = detail::field(j, "products");
  if (!products.is_array()) throw ParseError("'products' must be an array");
  for (size_t idx = 0; idx < products.size(); ++idx) {
    const auto& entry = products[idx];
    const std::string where = "products[" + std::to_string(idx) + "]";
    if (!entry.is_object()) throw ParseError(where + " must be an object");
    const auto& fi = detail::field(entry, "i");
    const auto& fj = detail::field(entry, "j");
    if (!fi.is_number_integer() || !fj.is_number_integer())
      throw ParseError(where + ": 'i' and 'j' must be integers");
    const int i = fi.get<int>(), jj = fj.get<int>();
    if (i < 1 || i > n || jj < 1 || jj > n)
      throw ParseError(where + ": indices must lie in [1, " + std::to_string(n) + "]");
    if (!seen.insert({i, jj}).second)
      throw ParseError(where + ": duplicate product (" + std::to_string(i) + ", " +
                       std::to_string(jj) + ")");
    const auto& coeffs = detail::field(entry, "coeffs");
    if (!coeffs.is_array() || static_cast<int>(coeffs.size()) != n)
      throw ParseError(where + ": 'coeffs' must be an array of length " + std::to_string(n));
    for (int k = 0; k < n; ++k) {
      if (!coeffs[k].is_number()) throw ParseError(where + ": coefficients must be numbers");
      a.c(i - 1, jj - 1, k) = coeffs[k].get<double>();
    }
  }
  if (out.commutative_close) {
    for (const auto& [i, jj] : seen)
      if (i != jj && !seen.count({jj, i}))
        for (int k = 0; k < n; ++k) a.c(jj - 1, i - 1, k) = a.c(i - 1, jj - 1, k);
  }
  out.algebra = std::move(a);

  if (j.contains("metric")) {
    const auto& m = j["metric"];
    if (!m.is_array() || static_cast<int>(m.size()) != n)
      throw ParseError("'metric' must be an n x n array of rows");
    Mat g(n, n);
    for (int r = 0; r < n; ++r) {
      if (!m[r].is_array() || static_cast<int>(m[r].size()) != n)
        throw ParseError("metric row " + std::to_string(r + 1) + " must have length " +
                         std::to_string(n));
      for (int c = 0; c < n; ++c) {
        if (!m[r][c].is_number()) throw ParseError("metric entries must be numbers");
        g(r, c) = m[r][c].get<double>();
      }
    }
    out.metric = std::move(g);
  }
  if (j.contains("names")) {
    const auto& names = j["names"];
    if (!names.is_array() || static_cast<int>(names.size()) != n)
      throw ParseError("'names' must list one label per basis vector");
    for (const auto& s : names) {
      if (!s.is_string()) throw ParseError("'names' entries must be strings");
      out.names.push_back(s.get<std::string>());
    }
  }
  return out;
}

inline AlgebraFile load_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return parse_algebra_json(j);
}

inline nlohmann::json algebra_to_json(const Algebra& a, const std::optional<Mat>& metric,
                                      const std::vector<std::string>& names = {}) {
  const int n = a.dim();
  nlohmann::json j;
  j["dim"] = n;
  if (!a.label().empty()) j["label"] = a.label();
  j["commutative_close"] = true;
  nlohmann::json products = nlohmann::json::array();
  for (int i = 0; i < n; ++i)
    for (int jj = i; jj < n; ++jj) {
      bool nonzero = false;
      for (int k = 0; k < n; ++k)
        if (a.c(i, jj, k) != 0.0) nonzero = true;
      if (!nonzero) continue;
      nlohmann::json entry;
      entry["i"] = i + 1;
      entry["j"] = jj + 1;
      nlohmann::json coeffs = nlohmann::json::array();
      for (int k = 0; k < n; ++k) coeffs.push_back(a.c(i, jj, k));
      entry["coeffs"] = std::move(coeffs);
      products.push_back(std::move(entry));
    }
  j["products"] = std::move(products);
  if (metric) {
    nlohmann::json m = nlohmann::json::array();
    for (int r = 0; r < n; ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < n; ++c) row.push_back((*metric)(r, c));
      m.push_back(std::move(row));
    }
    j["metric"] = std::move(m);
  }
  if (!names.empty()) j["names"] = names;
  return j;
}

inline void save_algebra_file(const std::string& path, const Algebra& a,
                              const std::optional<Mat>& metric = std::nullopt,
                              const std::vector<std::string>& names = {}) {
  std::ofstream outp(path);
  if (!outp) throw ParseError("cannot write '" + path + "'");
  outp << algebra_to_json(a, metric, names).dump(2) << "\n";
}

/// FNV-1a of the raw file bytes; stable input fingerprint for reports.
inline std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "unreadable";
  uint64_t h = 1469598103934665603ULL;
  char ch;
  while (in.get(ch)) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << "fnv1a:" << std::hex << h;
  return os.str();
}

inline nlohmann::json matrix_to_json(const Mat& m) {
  nlohmann::json t;
  t["shape"] = {m.rows(), m.cols()};
  nlohmann::json data = nlohmann::json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
  t["data"] = std::move(data);
  return t;
}

inline nlohmann::json vector_to_json(const Vec& v) {
  nlohmann::json t;
  t["shape"] = {static_cast<int>(v.size())};
  t["data"] = v;
  return t;
}

}  // namespace jordanis
