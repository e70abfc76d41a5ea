#pragma once

#include "enriques/bitset.hpp"
#include "enriques/errors.hpp"
#include "enriques/fiber_classify.hpp"
#include "enriques/parallel.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace enriques {

inline constexpr std::size_t max_sequence_length = 10;

struct IsotropicSequence {
  std::vector<std::size_t> members; // increasing fibration indices
  std::size_t length() const { return members.size(); }
  friend bool operator==(const IsotropicSequence &, const IsotropicSequence &) = default;
  friend auto operator<=>(const IsotropicSequence &, const IsotropicSequence &) = default;
};

struct SearchOptions {
  bool use_caps = false;
  unsigned threads = 1;
};

namespace detail {

// Depth-first search over sequences whose smallest member is `root`, in
// canonical (lexicographic) order. visit(members, common) receives the set of
// all fibrations compatible with every member.
template <class Visit>
void sequences_from(const HalfFiberSet &hf, const SearchOptions &opt,
                    std::size_t root, Visit &&visit) {
  std::vector<std::size_t> seq{root};
  std::vector<int> used(hf.types.size(), 0);
  used[hf.type_of[root]] = 1;
  auto rec = [&](auto &self, const DynamicBitset &common) -> void {
    visit(seq, common);
    if (seq.size() == max_sequence_length)
      return;
    for (std::size_t c = common.next(seq.back() + 1); c < common.size();
         c = common.next(c + 1)) {
      const std::size_t t = hf.type_of[c];
      if (opt.use_caps && used[t] >= hf.cap(t))
        continue;
      seq.push_back(c);
      ++used[t];
      self(self, common & hf.compatible[c]);
      --used[t];
      seq.pop_back();
    }
  };
  rec(rec, hf.compatible[root]);
}

template <class Slot, class Fill>
std::vector<Slot> per_root(const HalfFiberSet &hf, const SearchOptions &opt, Fill &&fill) {
  std::vector<Slot> slots(hf.size());
  parallel_for(hf.size(), opt.threads, [&](std::size_t root) { fill(root, slots[root]); });
  return slots;
}

} // namespace detail

// Every nonempty pairwise-compatible set, each once, canonical order.
inline std::vector<IsotropicSequence> enumerate_sequences(const HalfFiberSet &hf,
                                                          SearchOptions opt = {}) {
  auto slots = detail::per_root<std::vector<IsotropicSequence>>(
      hf, opt, [&](std::size_t root, std::vector<IsotropicSequence> &out) {
        detail::sequences_from(hf, opt, root,
                               [&](const std::vector<std::size_t> &s, const DynamicBitset &) {
                                 out.push_back({s});
                               });
      });
  std::vector<IsotropicSequence> all;
  for (auto &s : slots)
    all.insert(all.end(), std::make_move_iterator(s.begin()),
               std::make_move_iterator(s.end()));
  return all;
}

// Number of sequences of each length (index = length).
inline std::vector<std::size_t> sequence_length_counts(const HalfFiberSet &hf,
                                                       SearchOptions opt = {}) {
  using Counts = std::vector<std::size_t>;
  auto slots = detail::per_root<Counts>(hf, opt, [&](std::size_t root, Counts &out) {
    out.assign(max_sequence_length + 1, 0);
    detail::sequences_from(hf, opt, root,
                           [&](const std::vector<std::size_t> &s, const DynamicBitset &) {
                             ++out[s.size()];
                           });
  });
  Counts total(max_sequence_length + 1, 0);
  for (const auto &c : slots)
    for (std::size_t i = 0; i < c.size(); ++i)
      total[i] += c[i];
  return total;
}

// 0 when there are no half-fiber classes; callers report that as a warning.
inline int cnd(const HalfFiberSet &hf, SearchOptions opt = {}) {
  auto counts = sequence_length_counts(hf, opt);
  for (std::size_t len = counts.size(); len-- > 0;)
    if (counts[len] > 0)
      return static_cast<int>(len);
  return 0;
}

struct CensusRow {
  std::size_t length;
  std::vector<std::pair<std::string, int>> types; // (type label, multiplicity)
  std::size_t count;

  std::string types_label() const {
    std::string s;
    for (std::size_t i = 0; i < types.size(); ++i)
      s += (i ? ", " : "") + std::to_string(types[i].second) + " x (" +
           types[i].first + ")";
    return s;
  }
};

struct SaturationReport {
  std::vector<IsotropicSequence> sequences; // saturated ones only
  std::vector<CensusRow> census;

  std::size_t count_of_length(std::size_t len) const {
    std::size_t c = 0;
    for (const auto &r : census)
      if (r.length == len)
        c += r.count;
    return c;
  }
};

inline std::vector<std::pair<std::string, int>>
type_multiset(const HalfFiberSet &hf, const IsotropicSequence &s) {
  std::vector<std::pair<std::string, int>> out;
  for (std::size_t m : s.members) {
    const auto &label = hf.types[hf.type_of[m]];
    if (!out.empty() && out.back().first == label)
      ++out.back().second;
    else
      out.emplace_back(label, 1);
  }
  return out;
}

// Sequences no further half-fiber class can extend.
inline SaturationReport saturated(const HalfFiberSet &hf, SearchOptions opt = {}) {
  using Found = std::vector<IsotropicSequence>;
  auto slots = detail::per_root<Found>(hf, opt, [&](std::size_t root, Found &out) {
    detail::sequences_from(hf, opt, root,
                           [&](const std::vector<std::size_t> &s, const DynamicBitset &common) {
                             if (!common.any())
                               out.push_back({s});
                           });
  });
  struct Keyed {
    std::size_t length;
    std::string types;
    IsotropicSequence seq;
  };
  std::vector<Keyed> keyed;
  for (auto &slot : slots)
    for (auto &s : slot) {
      CensusRow r{s.length(), type_multiset(hf, s), 0};
      keyed.push_back({s.length(), r.types_label(), std::move(s)});
    }
  std::stable_sort(keyed.begin(), keyed.end(), [](const Keyed &a, const Keyed &b) {
    if (a.length != b.length)
      return a.length > b.length;
    if (a.types != b.types)
      return a.types < b.types;
    return a.seq < b.seq;
  });
  SaturationReport rep;
  for (auto &k : keyed) {
    if (rep.census.empty() || rep.census.back().length != k.length ||
        rep.census.back().types_label() != k.types)
      rep.census.push_back({k.length, type_multiset(hf, k.seq), 0});
    ++rep.census.back().count;
    rep.sequences.push_back(std::move(k.seq));
  }
  return rep;
}

// ---- canonical extensions ------------------------------------------------

struct DegenerateMember {
  std::size_t base_position;       // index into the base sequence
  std::vector<std::size_t> chain;  // R_1, ..., R_j
  RationalVector class_vector;     // base class + sum of the chain
};

struct CanonicalExtension {
  IsotropicSequence base;
  std::vector<RationalVector> base_classes;
  std::vector<DegenerateMember> degenerate_members;

  std::size_t length() const { return base_classes.size() + degenerate_members.size(); }

  // Base class followed by its partial chains, base by base.
  std::vector<RationalVector> classes() const {
    std::vector<RationalVector> out;
    for (std::size_t s = 0; s < base_classes.size(); ++s) {
      out.push_back(base_classes[s]);
      for (const auto &d : degenerate_members)
        if (d.base_position == s)
          out.push_back(d.class_vector);
    }
    return out;
  }

  // The full chain attached to base s (empty if none).
  std::vector<std::size_t> chain_of(std::size_t s) const {
    std::vector<std::size_t> longest;
    for (const auto &d : degenerate_members)
      if (d.base_position == s && d.chain.size() > longest.size())
        longest = d.chain;
    return longest;
  }
};

namespace detail {

inline void check_extension(const CanonicalExtension &ext, const IntegerMatrix &m) {
  auto cls = ext.classes();
  for (std::size_t i = 0; i < cls.size(); ++i) {
    if (pairing(cls[i], cls[i], m) != 0)
      throw invariant_error("extension member is not isotropic");
    for (std::size_t j = i + 1; j < cls.size(); ++j)
      if (pairing(cls[i], cls[j], m) != 1)
        throw invariant_error("extension members do not pair to 1");
  }
}

} // namespace detail

// All ways to complete a non-degenerate sequence to length 10 by adding
// base + A-chain classes built from curves. limit = 0 means no limit.
inline std::vector<CanonicalExtension>
extend_to_canonical(const IsotropicSequence &seq, const HalfFiberSet &hf,
                    std::size_t limit = 0) {
  const std::size_t k = seq.length();
  if (k == 0 || k > max_sequence_length)
    throw input_error("sequence length must be between 1 and 10");
  for (std::size_t a = 0; a < k; ++a) {
    if (seq.members[a] >= hf.size())
      throw input_error("sequence refers to an unknown fibration");
    for (std::size_t b = a + 1; b < k; ++b)
      if (!hf.compatible[seq.members[a]].test(seq.members[b]))
        throw input_error("sequence is degenerate: members do not pair to 1");
  }
  const IntegerMatrix &m = hf.matrix;
  const std::size_t curves = m.rows();
  const std::size_t budget = max_sequence_length - k;

  // fr[s][r] = f_s . R_r
  std::vector<std::vector<Rational>> fr(k, std::vector<Rational>(curves, Rational(0)));
  std::vector<RationalVector> bases;
  for (std::size_t s = 0; s < k; ++s) {
    bases.push_back(hf.fibrations[seq.members[s]].half_fiber_class);
    for (std::size_t r = 0; r < curves; ++r)
      for (std::size_t i = 0; i < curves; ++i)
        if (bases[s][i] != 0 && m(i, r) != 0)
          fr[s][r] += bases[s][i] * m(i, r);
  }
  auto orthogonal_to_others = [&](std::size_t s, std::size_t r) {
    for (std::size_t u = 0; u < k; ++u)
      if (u != s && fr[u][r] != 0)
        return false;
    return true;
  };

  std::vector<std::vector<std::vector<std::size_t>>> chains(k);
  for (std::size_t s = 0; s < k && budget > 0; ++s) {
    std::vector<std::size_t> chain;
    auto grow = [&](auto &self) -> void {
      chains[s].push_back(chain);
      if (chain.size() == budget)
        return;
      for (std::size_t r = 0; r < curves; ++r) {
        if (fr[s][r] != 0 || !orthogonal_to_others(s, r))
          continue;
        if (std::find(chain.begin(), chain.end(), r) != chain.end())
          continue;
        bool ok = m(chain.back(), r) == 1;
        for (std::size_t q = 0; ok && q + 1 < chain.size(); ++q)
          ok = m(chain[q], r) == 0;
        if (!ok)
          continue;
        chain.push_back(r);
        self(self);
        chain.pop_back();
      }
    };
    for (std::size_t r = 0; r < curves; ++r)
      if (fr[s][r] == 1 && orthogonal_to_others(s, r)) {
        chain.assign(1, r);
        grow(grow);
      }
  }

  std::vector<CanonicalExtension> out;
  std::vector<const std::vector<std::size_t> *> pick(k, nullptr);
  std::vector<bool> taken(curves, false);
  auto disjoint = [&](const std::vector<std::size_t> &c) {
    for (std::size_t r : c) {
      if (taken[r])
        return false;
      for (std::size_t o = 0; o < curves; ++o)
        if (taken[o] && m(r, o) != 0)
          return false;
    }
    return true;
  };
  auto assign = [&](auto &self, std::size_t s, std::size_t left) -> bool {
    if (s == k) {
      if (left != 0)
        return true;
      CanonicalExtension ext{seq, bases, {}};
      for (std::size_t b = 0; b < k; ++b) {
        if (!pick[b])
          continue;
        RationalVector v = bases[b];
        std::vector<std::size_t> prefix;
        for (std::size_t r : *pick[b]) {
          v[r] += 1;
          prefix.push_back(r);
          ext.degenerate_members.push_back({b, prefix, v});
        }
      }
      detail::check_extension(ext, m);
      out.push_back(std::move(ext));
      return limit == 0 || out.size() < limit;
    }
    pick[s] = nullptr;
    if (!self(self, s + 1, left))
      return false;
    for (const auto &c : chains[s]) {
      if (c.size() > left || !disjoint(c))
        continue;
      for (std::size_t r : c)
        taken[r] = true;
      pick[s] = &c;
      bool more = self(self, s + 1, left - c.size());
      for (std::size_t r : c)
        taken[r] = false;
      pick[s] = nullptr;
      if (!more)
        return false;
    }
    return true;
  };
  assign(assign, 0, budget);
  return out;
}

struct FanoReport {
  RationalVector delta;
  std::vector<std::size_t> contracted_curves;
  std::vector<std::string> singularities; // sorted, e.g. {"A1", "A1", "A2"}
};

inline FanoReport fano_report(const CanonicalExtension &ext, const NumBasis &basis,
                              const HalfFiberSet &hf) {
  if (ext.length() != max_sequence_length)
    throw input_error("Fano report needs a sequence of length 10");
  const auto cls = ext.classes();
  FanoReport rep;
  rep.delta.assign(hf.matrix.rows(), Rational(0));
  for (const auto &c : cls)
    for (std::size_t i = 0; i < c.size(); ++i)
      rep.delta[i] += c[i];
  for (auto &x : rep.delta)
    x /= 3;
  if (!basis.in_num(rep.delta))
    throw invariant_error("Delta does not lie in Num(S)");
  if (pairing(rep.delta, rep.delta, hf.matrix) != 10)
    throw invariant_error("Delta^2 is not 10");
  for (const auto &c : cls)
    if (pairing(rep.delta, c, hf.matrix) != 3)
      throw invariant_error("Delta does not pair to 3 with a member");
  std::vector<std::pair<int, std::string>> sing;
  for (std::size_t s = 0; s < ext.base_classes.size(); ++s) {
    auto chain = ext.chain_of(s);
    if (chain.empty())
      continue;
    rep.contracted_curves.insert(rep.contracted_curves.end(), chain.begin(), chain.end());
    sing.emplace_back(static_cast<int>(chain.size()), "A" + std::to_string(chain.size()));
  }
  std::sort(rep.contracted_curves.begin(), rep.contracted_curves.end());
  std::sort(sing.begin(), sing.end());
  for (auto &s : sing)
    rep.singularities.push_back(s.second);
  return rep;
}

} // namespace enriques
