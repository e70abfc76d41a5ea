#pragma once

#include "enriques/errors.hpp"
#include "enriques/exact_lattice.hpp"
#include "enriques/rational.hpp"

#include <json.hpp>

#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace enriques {

struct CurveConfiguration {
  std::vector<std::string> labels;
  IntegerMatrix matrix;

  std::size_t size() const { return labels.size(); }
  // Intersection number clamped to 3; templates only use 0, 1, 2.
  int weight(std::size_t i, std::size_t j) const {
    const Integer &x = matrix(i, j);
    return x > 3 ? 3 : static_cast<int>(x);
  }
};

inline std::string entry_name(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

inline std::vector<std::string> default_labels(std::size_t k) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < k; ++i)
    out.push_back("R" + std::to_string(i + 1));
  return out;
}

inline CurveConfiguration load_configuration(const IntegerMatrix &raw,
                                             std::vector<std::string> labels = {}) {
  if (!raw.square())
    throw input_error("intersection matrix is not square (" +
                      std::to_string(raw.rows()) + "x" +
                      std::to_string(raw.cols()) + ")");
  const std::size_t k = raw.rows();
  if (k == 0)
    throw input_error("configuration has no curves");
  if (labels.empty())
    labels = default_labels(k);
  if (labels.size() != k)
    throw input_error(std::to_string(labels.size()) + " curve labels for a " +
                      std::to_string(k) + "x" + std::to_string(k) + " matrix");
  std::set<std::string> seen;
  for (const auto &l : labels)
    if (!seen.insert(l).second)
      throw input_error("duplicate curve label \"" + l + "\"");
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const Integer &x = raw(i, j);
      if (i == j) {
        if (x != -2)
          throw input_error("diagonal entry at " + entry_name(i, j) + " is " +
                            x.str() + ", expected -2");
        continue;
      }
      if (i < j && x != raw(j, i))
        throw input_error("matrix not symmetric at " + entry_name(i, j));
      if (x < 0)
        throw input_error("negative intersection at " + entry_name(i, j) + " (" +
                          labels[i] + "." + labels[j] + " = " + x.str() + ")");
    }
  return CurveConfiguration{std::move(labels), raw};
}

struct NumBasis {
  std::vector<RationalVector> vectors;
  std::string source;
  IntegerMatrix gram;
  // M * B_j, so that x . B_j is a dot product over the support of x
  std::vector<RationalVector> dual_rows;

  // The class of x in Num(S) is determined by these ten numbers.
  RationalVector pairings(const RationalVector &x) const {
    RationalVector out(dual_rows.size(), Rational(0));
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0)
        continue;
      for (std::size_t j = 0; j < dual_rows.size(); ++j)
        if (dual_rows[j][i] != 0)
          out[j] += x[i] * dual_rows[j][i];
    }
    return out;
  }

  bool in_num(const RationalVector &x) const {
    for (const auto &p : pairings(x))
      if (!is_integer(p))
        return false;
    return true;
  }
};

inline NumBasis load_basis(const CurveConfiguration &config,
                           const std::vector<RationalVector> &rows,
                           std::string source = {}) {
  if (rows.size() != 10)
    throw input_error("basis has " + std::to_string(rows.size()) +
                      " vectors, expected 10");
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].size() != config.size())
      throw input_error("basis vector " + std::to_string(i + 1) + " has " +
                        std::to_string(rows[i].size()) + " coordinates, expected " +
                        std::to_string(config.size()));
  RationalMatrix g = gram(rows, config.matrix);
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 10; ++j)
      if (!is_integer(g(i, j)))
        throw input_error("basis Gram not integral at " + entry_name(i, j) +
                          " (" + to_string(g(i, j)) + ")");
  IntegerMatrix gi = to_integer(g);
  for (std::size_t i = 0; i < 10; ++i)
    if (gi(i, i) % 2 != 0)
      throw input_error("basis Gram not even at " + entry_name(i, i));
  Integer det = determinant(gi);
  if (abs_int(det) != 1)
    throw input_error("basis does not span a unimodular lattice (det " +
                      det.str() + ")");
  NumBasis b{rows, std::move(source), std::move(gi), {}};
  const RationalMatrix m = to_rational(config.matrix);
  for (const auto &v : rows) {
    RationalVector d(config.size(), Rational(0));
    for (std::size_t i = 0; i < config.size(); ++i)
      for (std::size_t k = 0; k < config.size(); ++k)
        if (v[k] != 0 && m(i, k) != 0)
          d[i] += m(i, k) * v[k];
    b.dual_rows.push_back(std::move(d));
  }
  return b;
}

inline RationalVector class_of(const IntegerVector &multiplicities,
                               const CurveConfiguration &config) {
  if (multiplicities.size() != config.size())
    throw input_error("multiplicity vector has " +
                      std::to_string(multiplicities.size()) +
                      " entries, expected " + std::to_string(config.size()));
  return to_rational(multiplicities);
}

struct DivisorSpec {
  std::string name;
  RationalVector vector;
};

// "1/2(R1 + R2 + 2R5)", "R9 + R10", "0"
inline std::string format_class(const RationalVector &v,
                                const std::vector<std::string> &labels) {
  Integer common = 1;
  for (const auto &c : v)
    if (c != 0)
      common = boost::multiprecision::lcm(common, denominator(c));
  std::string body;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0)
      continue;
    Integer c = numerator(Rational(v[i] * common));
    bool neg = c < 0;
    Integer a = abs_int(c);
    if (body.empty())
      body += neg ? "-" : "";
    else
      body += neg ? " - " : " + ";
    if (a != 1)
      body += a.str();
    body += labels[i];
  }
  if (body.empty())
    return "0";
  if (common == 1)
    return body;
  return "1/" + common.str() + "(" + body + ")";
}

// ---- document I/O -------------------------------------------------------

using json = nlohmann::json;

inline json rational_to_json(const Rational &q) {
  if (is_integer(q)) {
    const Integer n = numerator(q);
    if (n >= std::numeric_limits<long long>::min() &&
        n <= std::numeric_limits<long long>::max())
      return json(static_cast<long long>(n));
  }
  return json(to_string(q));
}

inline Rational rational_from_json(const json &j) {
  if (j.is_number_integer())
    return Rational(j.get<long long>());
  if (j.is_string())
    return parse_rational(j.get<std::string>());
  throw input_error("expected an integer or a \"p/q\" string, got " + j.dump());
}

inline json vector_to_json(const RationalVector &v) {
  json a = json::array();
  for (const auto &q : v)
    a.push_back(rational_to_json(q));
  return a;
}

inline RationalVector vector_from_json(const json &j) {
  if (!j.is_array())
    throw input_error("expected an array of rationals, got " + j.dump());
  RationalVector v;
  for (const auto &e : j)
    v.push_back(rational_from_json(e));
  return v;
}

struct SurfaceDocument {
  std::string id;
  std::string title;
  std::string notes;
  CurveConfiguration configuration;
  std::vector<RationalVector> basis_rows;
  std::vector<DivisorSpec> divisors;
};

inline SurfaceDocument parse_document(const json &doc, std::string id = {}) {
  if (!doc.is_object())
    throw input_error("input document must be an object");
  for (const char *field : {"intersection_matrix", "num_basis"})
    if (!doc.contains(field))
      throw input_error(std::string("missing field \"") + field + "\"");
  SurfaceDocument out;
  out.id = doc.value("id", id);
  out.title = doc.value("title", std::string());
  out.notes = doc.value("notes", std::string());

  const json &m = doc["intersection_matrix"];
  if (!m.is_array())
    throw input_error("\"intersection_matrix\" must be an array of rows");
  std::vector<std::vector<Integer>> rows;
  for (const auto &row : m) {
    if (!row.is_array())
      throw input_error("\"intersection_matrix\" rows must be arrays");
    std::vector<Integer> r;
    for (const auto &e : row) {
      if (!e.is_number_integer())
        throw input_error("intersection numbers must be integers, got " + e.dump());
      r.push_back(Integer(e.get<long long>()));
    }
    rows.push_back(std::move(r));
  }
  std::vector<std::string> labels;
  if (doc.contains("curves")) {
    for (const auto &l : doc["curves"]) {
      if (!l.is_string())
        throw input_error("curve labels must be strings");
      labels.push_back(l.get<std::string>());
    }
  }
  out.configuration = load_configuration(IntegerMatrix::from_rows(rows), labels);

  const json &b = doc["num_basis"];
  if (!b.is_array())
    throw input_error("\"num_basis\" must be an array of rows");
  for (const auto &row : b)
    out.basis_rows.push_back(vector_from_json(row));

  if (doc.contains("divisors")) {
    const json &d = doc["divisors"];
    if (!d.is_object())
      throw input_error("\"divisors\" must map names to rows");
    for (auto it = d.begin(); it != d.end(); ++it) {
      RationalVector v = vector_from_json(it.value());
      if (v.size() != out.configuration.size())
        throw input_error("divisor \"" + it.key() + "\" has " +
                          std::to_string(v.size()) + " coordinates, expected " +
                          std::to_string(out.configuration.size()));
      out.divisors.push_back({it.key(), std::move(v)});
    }
  }
  return out;
}

inline json serialize(const SurfaceDocument &d) {
  json doc = json::object();
  if (!d.id.empty())
    doc["id"] = d.id;
  if (!d.title.empty())
    doc["title"] = d.title;
  if (!d.notes.empty())
    doc["notes"] = d.notes;
  doc["curves"] = d.configuration.labels;
  json m = json::array();
  for (std::size_t i = 0; i < d.configuration.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < d.configuration.size(); ++j)
      row.push_back(static_cast<long long>(d.configuration.matrix(i, j)));
    m.push_back(row);
  }
  doc["intersection_matrix"] = m;
  json b = json::array();
  for (const auto &r : d.basis_rows)
    b.push_back(vector_to_json(r));
  doc["num_basis"] = b;
  if (!d.divisors.empty()) {
    json dv = json::object();
    for (const auto &div : d.divisors)
      dv[div.name] = vector_to_json(div.vector);
    doc["divisors"] = dv;
  }
  return doc;
}

} // namespace enriques
