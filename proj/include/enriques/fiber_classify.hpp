#pragma once

#include "enriques/bitset.hpp"
#include "enriques/dynkin_search.hpp"
#include "enriques/errors.hpp"
#include "enriques/surface_model.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace enriques {

enum class FiberKind { Fiber, HalfFiber };

inline const char *suffix(FiberKind k) {
  return k == FiberKind::Fiber ? "F" : "HF";
}

struct EllipticConfiguration {
  EllipticSubset subset;
  FiberKind kind;
  RationalVector reduced_class;
  RationalVector num_key; // pairings of reduced_class with the basis

  std::string tag() const { return subset.dynkin().name + suffix(kind); }
};

// Fiber iff half the class pairs integrally with every basis vector.
inline EllipticConfiguration classify(const EllipticSubset &subset,
                                      const NumBasis &basis) {
  RationalVector half = subset.class_vector;
  for (auto &c : half)
    c /= 2;
  RationalVector key = basis.pairings(half);
  bool fiber = std::all_of(key.begin(), key.end(),
                           [](const Rational &q) { return is_integer(q); });
  const char family = subset.dynkin().family;
  if (!fiber && (family == 'D' || family == 'E'))
    throw invariant_error("basis inconsistent: " + subset.dynkin().name +
                          "-configuration classified as half-fiber");
  if (fiber)
    return {subset, FiberKind::Fiber, std::move(half), std::move(key)};
  for (auto &q : key)
    q *= 2;
  return {subset, FiberKind::HalfFiber, subset.class_vector, std::move(key)};
}

// One term "<count> <Dynkin><F|HF>" of a type label.
struct TypeTerm {
  char family;
  int rank;
  FiberKind kind;
  int count;

  auto order_key() const {
    int f = family == 'A' ? 0 : family == 'D' ? 1 : 2;
    return std::make_tuple(f, rank, kind == FiberKind::Fiber ? 0 : 1, count);
  }
  std::string str() const {
    return std::to_string(count) + " " + std::string(1, family) +
           std::to_string(rank) + suffix(kind);
  }
};

struct Fibration {
  RationalVector half_fiber_class;
  RationalVector num_key;
  std::vector<std::size_t> members; // indices into HalfFiberSet::configurations
  std::vector<TypeTerm> terms;
  std::string type_label;
};

inline bool type_less(const std::vector<TypeTerm> &a, const std::vector<TypeTerm> &b) {
  return std::lexicographical_compare(
      a.begin(), a.end(), b.begin(), b.end(),
      [](const TypeTerm &x, const TypeTerm &y) { return x.order_key() < y.order_key(); });
}

struct HalfFiberSet {
  std::vector<std::string> labels;
  IntegerMatrix matrix;
  std::vector<EllipticConfiguration> configurations;
  std::vector<Fibration> fibrations;
  std::vector<std::string> types;          // distinct labels in fibration order
  std::vector<std::size_t> type_of;        // fibration -> index into types
  std::map<std::string, int> per_type_cap;
  std::vector<std::vector<Integer>> pairing_table;
  std::vector<DynamicBitset> compatible;   // pairing exactly 1

  std::size_t size() const { return fibrations.size(); }
  int cap(std::size_t type) const { return per_type_cap.at(types[type]); }
};

namespace detail {

// Largest clique of the compatibility graph inside `pool`.
inline int max_clique(const std::vector<DynamicBitset> &adj, DynamicBitset pool) {
  int best = 0;
  auto rec = [&](auto &self, const DynamicBitset &cand, int depth) -> void {
    if (depth > best)
      best = depth;
    if (depth + static_cast<int>(cand.count()) <= best)
      return;
    for (std::size_t v = cand.next(0); v < cand.size(); v = cand.next(v + 1)) {
      DynamicBitset next = cand & adj[v];
      next.clear_through(v);
      self(self, next, depth + 1);
      if (best >= 10)
        return;
    }
  };
  rec(rec, pool, 0);
  return best;
}

} // namespace detail

// Groups equal reduced classes, label, order, and cap.
inline HalfFiberSet build_half_fiber_set(std::vector<EllipticConfiguration> configs,
                                         const CurveConfiguration &config) {
  HalfFiberSet hf;
  hf.labels = config.labels;
  hf.matrix = config.matrix;
  hf.configurations = std::move(configs);

  std::map<RationalVector, std::size_t> by_key;
  std::vector<Fibration> groups;
  for (std::size_t i = 0; i < hf.configurations.size(); ++i) {
    const auto &c = hf.configurations[i];
    if (pairing(c.reduced_class, c.reduced_class, config.matrix) != 0)
      throw invariant_error("elliptic configuration with non-isotropic class " +
                            format_class(c.reduced_class, config.labels));
    auto [it, fresh] = by_key.emplace(c.num_key, groups.size());
    if (fresh)
      groups.push_back(Fibration{c.reduced_class, c.num_key, {}, {}, {}});
    groups[it->second].members.push_back(i);
  }

  for (auto &f : groups) {
    std::map<std::tuple<int, int, int>, TypeTerm> terms;
    for (std::size_t m : f.members) {
      const auto &c = hf.configurations[m];
      const auto &d = c.subset.dynkin();
      TypeTerm t{d.family, d.rank, c.kind, 0};
      auto key = std::make_tuple(std::get<0>(t.order_key()), d.rank,
                                 std::get<2>(t.order_key()));
      terms.emplace(key, t).first->second.count++;
    }
    std::vector<std::string> parts;
    for (auto &[key, t] : terms) {
      f.terms.push_back(t);
      parts.push_back(t.str());
    }
    for (std::size_t i = 0; i < parts.size(); ++i)
      f.type_label += (i ? " + " : "") + parts[i];
  }

  std::stable_sort(groups.begin(), groups.end(),
                   [](const Fibration &a, const Fibration &b) {
                     return type_less(a.terms, b.terms);
                   });
  hf.fibrations = std::move(groups);

  const std::size_t n = hf.fibrations.size();
  for (const auto &f : hf.fibrations) {
    if (hf.types.empty() || hf.types.back() != f.type_label)
      hf.types.push_back(f.type_label);
    hf.type_of.push_back(hf.types.size() - 1);
  }

  std::vector<RationalVector> images; // M * f
  for (const auto &f : hf.fibrations) {
    RationalVector mf(config.size(), Rational(0));
    for (std::size_t i = 0; i < config.size(); ++i)
      for (std::size_t j = 0; j < config.size(); ++j)
        if (f.half_fiber_class[j] != 0 && config.matrix(i, j) != 0)
          mf[i] += config.matrix(i, j) * f.half_fiber_class[j];
    images.push_back(std::move(mf));
  }
  hf.pairing_table.assign(n, std::vector<Integer>(n, 0));
  hf.compatible.assign(n, DynamicBitset(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      Rational p = 0;
      const auto &fa = hf.fibrations[a].half_fiber_class;
      for (std::size_t i = 0; i < fa.size(); ++i)
        if (fa[i] != 0)
          p += fa[i] * images[b][i];
      if (!is_integer(p) || p < 1)
        throw invariant_error("half-fiber classes " +
                              format_class(fa, config.labels) + " and " +
                              format_class(hf.fibrations[b].half_fiber_class,
                                           config.labels) +
                              " of distinct fibrations pair to " + to_string(p));
      hf.pairing_table[a][b] = hf.pairing_table[b][a] = numerator(p);
      if (p == 1) {
        hf.compatible[a].set(b);
        hf.compatible[b].set(a);
      }
    }

  for (std::size_t t = 0; t < hf.types.size(); ++t) {
    DynamicBitset pool(n);
    for (std::size_t i = 0; i < n; ++i)
      if (hf.type_of[i] == t)
        pool.set(i);
    hf.per_type_cap[hf.types[t]] = std::min(10, detail::max_clique(hf.compatible, pool));
  }
  return hf;
}

inline HalfFiberSet analyze_fibrations(const CurveConfiguration &config,
                                       const NumBasis &basis, unsigned threads = 1) {
  auto subsets = find_elliptic_subsets(config, threads);
  std::vector<EllipticConfiguration> configs;
  configs.reserve(subsets.size());
  for (const auto &s : subsets)
    configs.push_back(classify(s, basis));
  return build_half_fiber_set(std::move(configs), config);
}

inline Rational phi_invariant(const DivisorSpec &d, const HalfFiberSet &hf) {
  if (hf.fibrations.empty())
    throw input_error("no supported half-fibers");
  if (d.vector.size() != hf.matrix.rows())
    throw input_error("divisor \"" + d.name + "\" has the wrong length");
  Rational best = pairing(d.vector, hf.fibrations.front().half_fiber_class, hf.matrix);
  for (const auto &f : hf.fibrations)
    best = std::min(best, Rational(pairing(d.vector, f.half_fiber_class, hf.matrix)));
  return best;
}

} // namespace enriques
