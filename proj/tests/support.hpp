#pragma once

#include "enriques/datasets.hpp"
#include "enriques/fiber_classify.hpp"
#include "enriques/sequence_engine.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace testing_support {

using namespace enriques;

// Parses "1/2(2R1 + R3) + 1/4(R2 + R5)", "R9 + R10", "2R1".
inline RationalVector parse_class(const std::string &text,
                                  const std::vector<std::string> &labels) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < labels.size(); ++i)
    index[labels[i]] = i;
  RationalVector v(labels.size(), Rational(0));
  std::string s;
  for (char c : text)
    if (c != ' ')
      s += c;

  auto add_terms = [&](const std::string &body, const Rational &scale) {
    std::size_t pos = 0;
    while (pos < body.size()) {
      std::size_t next = body.find('+', pos);
      std::string term = body.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
      std::size_t r = term.find_first_not_of("0123456789");
      Rational coeff = r == 0 ? Rational(1) : Rational(Integer(term.substr(0, r)));
      v.at(index.at(term.substr(r))) += scale * coeff;
      if (next == std::string::npos)
        break;
      pos = next + 1;
    }
  };

  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t paren = s.find('(', pos);
    std::size_t plus = s.find('+', pos);
    if (paren != std::string::npos && (plus == std::string::npos || paren < plus)) {
      Rational scale = parse_rational(s.substr(pos, paren - pos));
      std::size_t close = s.find(')', paren);
      add_terms(s.substr(paren + 1, close - paren - 1), scale);
      pos = close + 1;
    } else {
      std::size_t end = plus == std::string::npos ? s.size() : plus;
      add_terms(s.substr(pos, end - pos), Rational(1));
      pos = end;
    }
    if (pos < s.size() && s[pos] == '+')
      ++pos;
  }
  return v;
}

inline const Dataset &dataset(const std::string &id) {
  static std::map<std::string, Dataset> cache;
  auto it = cache.find(id);
  if (it == cache.end())
    it = cache.emplace(id, load_dataset(id)).first;
  return it->second;
}

inline const HalfFiberSet &half_fibers(const std::string &id) {
  static std::map<std::string, HalfFiberSet> cache;
  auto it = cache.find(id);
  if (it == cache.end()) {
    const auto &d = dataset(id);
    it = cache.emplace(id, analyze_fibrations(d.configuration, d.basis)).first;
  }
  return it->second;
}

// Index of the fibration whose class equals x in Num(S), or npos.
inline std::size_t find_fibration(const HalfFiberSet &hf, const NumBasis &basis,
                                  const RationalVector &x) {
  RationalVector key = basis.pairings(x);
  for (std::size_t i = 0; i < hf.size(); ++i)
    if (hf.fibrations[i].num_key == key)
      return i;
  return static_cast<std::size_t>(-1);
}

inline std::map<std::string, std::size_t> type_census(const HalfFiberSet &hf) {
  std::map<std::string, std::size_t> c;
  for (const auto &f : hf.fibrations)
    ++c[f.type_label];
  return c;
}

// Synthetic half-fiber set with the given pairing table and one type.
inline HalfFiberSet synthetic(const std::vector<std::vector<int>> &pairings) {
  HalfFiberSet hf;
  const std::size_t n = pairings.size();
  hf.matrix = IntegerMatrix(n, n);
  hf.types = {"1 A1HF"};
  hf.per_type_cap["1 A1HF"] = 10;
  hf.compatible.assign(n, DynamicBitset(n));
  hf.pairing_table.assign(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    hf.fibrations.push_back(Fibration{RationalVector(n, Rational(0)), {}, {}, {}, "1 A1HF"});
    hf.type_of.push_back(0);
    for (std::size_t j = 0; j < n; ++j) {
      hf.pairing_table[i][j] = pairings[i][j];
      if (i != j && pairings[i][j] == 1)
        hf.compatible[i].set(j);
    }
  }
  return hf;
}

inline IntegerMatrix random_unimodular(std::mt19937_64 &rng, std::size_t n) {
  IntegerMatrix u = IntegerMatrix::identity(n);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> coeff(-2, 2);
  for (int step = 0; step < 4 * static_cast<int>(n); ++step) {
    std::size_t a = pick(rng), b = pick(rng);
    if (a == b)
      u.swap_rows(a, (a + 1) % n);
    else
      u.add_row(a, b, Integer(coeff(rng)));
  }
  return u;
}

// ---- oracles ----------------------------------------------------------------

using FoundSubsets = std::set<std::tuple<std::string, std::vector<std::size_t>, RationalVector>>;

inline FoundSubsets as_set(const std::vector<EllipticSubset> &subsets) {
  FoundSubsets out;
  for (const auto &s : subsets)
    out.emplace(s.dynkin().name, s.curve_set(), s.class_vector);
  return out;
}

// Every subset of size 2..9 against every template of that size, by trying
// all node bijections.
inline FoundSubsets naive_elliptic_subsets(const CurveConfiguration &c) {
  FoundSubsets out;
  const std::size_t k = c.size();
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    std::vector<std::size_t> set;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1)
        set.push_back(i);
    if (set.size() < 2 || set.size() > 9)
      continue;
    for (const auto &t : catalog()) {
      if (t.size() != set.size())
        continue;
      std::vector<std::size_t> perm = set;
      do {
        bool ok = true;
        for (std::size_t a = 0; a < perm.size() && ok; ++a)
          for (std::size_t b = 0; b < perm.size() && ok; ++b)
            ok = c.matrix(perm[a], perm[b]) == t.adjacency(a, b);
        if (ok) {
          RationalVector v(k, Rational(0));
          for (std::size_t a = 0; a < perm.size(); ++a)
            v[perm[a]] = t.multiplicities[a];
          out.emplace(t.name, set, v);
          break;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
  return out;
}

// Random (-2)-configuration with 2..8 curves and weights 0..3.
inline CurveConfiguration random_configuration(std::mt19937_64 &rng) {
  std::uniform_int_distribution<std::size_t> size(2, 8);
  std::uniform_int_distribution<int> percent(0, 99);
  const std::size_t k = size(rng);
  const int density = 20 + percent(rng) / 2;
  IntegerMatrix m(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    m(i, i) = -2;
    for (std::size_t j = i + 1; j < k; ++j) {
      int w = 0;
      if (percent(rng) < density) {
        int roll = percent(rng);
        w = roll < 85 ? 1 : roll < 97 ? 2 : 3;
      }
      m(i, j) = m(j, i) = w;
    }
  }
  return load_configuration(m);
}

// All pairwise-compatible sets, built level by level by appending a larger
// index, in canonical order.
inline std::vector<IsotropicSequence> levelwise_sequences(const HalfFiberSet &hf) {
  std::vector<IsotropicSequence> all;
  std::vector<std::vector<std::size_t>> level;
  for (std::size_t i = 0; i < hf.size(); ++i)
    level.push_back({i});
  for (std::size_t len = 1; !level.empty(); ++len) {
    for (const auto &s : level)
      all.push_back({s});
    if (len == max_sequence_length)
      break;
    std::vector<std::vector<std::size_t>> next;
    for (const auto &s : level)
      for (std::size_t c = s.back() + 1; c < hf.size(); ++c) {
        bool ok = true;
        for (std::size_t m : s)
          ok = ok && hf.pairing_table[m][c] == 1;
        if (ok) {
          next.push_back(s);
          next.back().push_back(c);
        }
      }
    level = std::move(next);
  }
  std::sort(all.begin(), all.end());
  return all;
}

inline IntegerMatrix random_matrix(std::mt19937_64 &rng, std::size_t r, std::size_t c,
                                   int bound) {
  std::uniform_int_distribution<int> e(-bound, bound);
  IntegerMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      m(i, j) = e(rng);
  return m;
}

// Empty when U A V = D with unimodular U, V, a divisibility chain, and
// product of the diagonal = |det A| for square A.
inline std::string snf_defect(const IntegerMatrix &a) {
  SmithDecomposition s = smith_normal_form(a);
  if (!(s.left * a * s.right == s.diagonal_matrix(a.rows(), a.cols())))
    return "U A V != D";
  if (abs_int(determinant(s.left)) != 1 || abs_int(determinant(s.right)) != 1)
    return "transform not unimodular";
  for (std::size_t i = 0; i < s.diag.size(); ++i) {
    if (s.diag[i] < 0)
      return "negative invariant factor";
    if (i + 1 < s.diag.size()) {
      if (s.diag[i] == 0 ? s.diag[i + 1] != 0 : s.diag[i + 1] % s.diag[i] != 0)
        return "divisibility chain broken";
    }
  }
  if (a.square()) {
    Integer prod = 1;
    for (const auto &d : s.diag)
      prod *= d;
    if (prod != abs_int(determinant(a)))
      return "product of invariant factors != |det|";
  }
  return {};
}

inline json fixture(const std::string &name) {
  std::ifstream in(std::string(ENRIQUES_TEST_DATA) + "/" + name);
  if (!in)
    throw std::runtime_error("missing fixture " + name);
  return json::parse(in);
}

inline std::vector<RationalVector> fixture_generators(const std::string &name) {
  const json doc = fixture(name);
  std::vector<RationalVector> g;
  for (const auto &row : doc.at("generators"))
    g.push_back(vector_from_json(row));
  return g;
}

// x - y has integral coordinates along the generators.
inline bool congruent_mod_lattice(const RationalVector &x, const RationalVector &y,
                                  const std::vector<RationalVector> &gens,
                                  const IntegerMatrix &m) {
  RationalVector diff(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    diff[i] = x[i] - y[i];
  for (const auto &c : lattice_coordinates(diff, gens, m))
    if (!is_integer(c))
      return false;
  return true;
}

// Fibration index of a class given in curve notation; npos when absent.
inline std::size_t fibration_of(const std::string &id, const std::string &cls) {
  const auto &hf = half_fibers(id);
  return find_fibration(hf, dataset(id).basis, parse_class(cls, hf.labels));
}

} // namespace testing_support
