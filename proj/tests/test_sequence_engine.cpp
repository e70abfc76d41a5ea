#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

using namespace enriques;
using testing_support::dataset;
using testing_support::find_fibration;
using testing_support::half_fibers;
using testing_support::parse_class;
using testing_support::synthetic;

namespace {

bool pairwise_compatible(const HalfFiberSet &hf, const std::vector<std::size_t> &s) {
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b)
      if (hf.pairing_table[s[a]][s[b]] != 1)
        return false;
  return true;
}

// Every subset of the fibrations, checked pair by pair.
std::vector<IsotropicSequence> bitmask_oracle(const HalfFiberSet &hf) {
  std::vector<IsotropicSequence> out;
  const std::size_t n = hf.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1)
        s.push_back(i);
    if (s.size() <= max_sequence_length && pairwise_compatible(hf, s))
      out.push_back({s});
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_saturated(const HalfFiberSet &hf, const IsotropicSequence &s) {
  for (std::size_t c = 0; c < hf.size(); ++c) {
    if (std::find(s.members.begin(), s.members.end(), c) != s.members.end())
      continue;
    bool ok = true;
    for (std::size_t m : s.members)
      ok = ok && hf.pairing_table[m][c] == 1;
    if (ok)
      return false;
  }
  return true;
}

std::size_t fib(const std::string &id, const std::string &cls) {
  const auto &hf = half_fibers(id);
  std::size_t i = find_fibration(hf, dataset(id).basis, parse_class(cls, hf.labels));
  if (i >= hf.size())
    throw std::runtime_error("no fibration " + cls);
  return i;
}

// base position -> chain as curve labels
using ChainMap = std::map<std::size_t, std::vector<std::string>>;

ChainMap chains(const CanonicalExtension &ext, const HalfFiberSet &hf) {
  ChainMap out;
  for (std::size_t s = 0; s < ext.base_classes.size(); ++s) {
    auto c = ext.chain_of(s);
    if (c.empty())
      continue;
    for (std::size_t r : c)
      out[s].push_back(hf.labels[r]);
  }
  return out;
}

const std::vector<std::string> small_ids = {"kondo1", "mlp2", "kondo2"};

} // namespace

TEST(Sequences, BitmaskOracle) {
  for (const auto &id : small_ids) {
    const auto &hf = half_fibers(id);
    auto got = enumerate_sequences(hf);
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, bitmask_oracle(hf)) << id;
  }
}

TEST(Sequences, LevelwiseOracle) {
  for (const auto &id : embedded_dataset_ids()) {
    const auto &hf = half_fibers(id);
    if (hf.size() > 60)
      continue;
    auto got = enumerate_sequences(hf);
    std::sort(got.begin(), got.end());
    auto expected = testing_support::levelwise_sequences(hf);
    EXPECT_EQ(got, expected) << id;
    std::vector<std::size_t> counts(max_sequence_length + 1, 0);
    for (const auto &s : expected)
      ++counts[s.length()];
    EXPECT_EQ(sequence_length_counts(hf), counts) << id;
  }
}

TEST(Sequences, CanonicalOrderWithoutDuplicates) {
  for (const auto &id : small_ids) {
    auto all = enumerate_sequences(half_fibers(id));
    for (std::size_t i = 1; i < all.size(); ++i)
      EXPECT_LT(all[i - 1], all[i]) << id;
    for (const auto &s : all)
      EXPECT_TRUE(std::is_sorted(s.members.begin(), s.members.end()));
  }
}

TEST(Sequences, ThreadAndCapInvariance) {
  for (const auto &id : embedded_dataset_ids()) {
    const auto &hf = half_fibers(id);
    const int reference = cnd(hf, {false, 1});
    EXPECT_EQ(cnd(hf, {true, 1}), reference) << id;
    EXPECT_EQ(cnd(hf, {false, 8}), reference) << id;
    EXPECT_EQ(cnd(hf, {true, 8}), reference) << id;
  }
  for (const auto &id : small_ids) {
    const auto &hf = half_fibers(id);
    EXPECT_EQ(enumerate_sequences(hf, {false, 8}), enumerate_sequences(hf, {false, 1}));
    EXPECT_EQ(sequence_length_counts(hf, {true, 4}), sequence_length_counts(hf, {false, 1}));
  }
}

TEST(Cnd, GoldenValues) {
  const std::map<std::string, int> expected = {
      {"d16", 10},   {"mlp1", 8},   {"mlp2", 5},   {"kondo1", 4}, {"kondo2", 7},
      {"kondo3", 8}, {"kondo4", 10}, {"kondo5", 7}, {"kondo6", 10}, {"kondo7", 10}};
  for (const auto &[id, value] : expected) {
    const auto &hf = half_fibers(id);
    EXPECT_EQ(cnd(hf), value) << id;
    EXPECT_LE(cnd(hf), 10);
  }
}

TEST(Cnd, D16HasSixteenMaximalSequences) {
  EXPECT_EQ(sequence_length_counts(half_fibers("d16"))[10], 16u);
}

TEST(Cnd, SingleFibration) {
  HalfFiberSet hf = synthetic({{0}});
  EXPECT_EQ(cnd(hf), 1);
  auto rep = saturated(hf);
  ASSERT_EQ(rep.sequences.size(), 1u);
  EXPECT_EQ(rep.sequences[0].members, (std::vector<std::size_t>{0}));
}

TEST(Cnd, EmptySetGivesZero) {
  HalfFiberSet hf = synthetic({});
  EXPECT_EQ(cnd(hf), 0);
  EXPECT_TRUE(saturated(hf).sequences.empty());
}

TEST(Saturated, PairingTwoGivesTwoSingletons) {
  HalfFiberSet hf = synthetic({{0, 2}, {2, 0}});
  EXPECT_EQ(cnd(hf), 1);
  auto rep = saturated(hf);
  ASSERT_EQ(rep.census.size(), 1u);
  EXPECT_EQ(rep.census[0].length, 1u);
  EXPECT_EQ(rep.census[0].count, 2u);
}

TEST(Saturated, KondoVIUniqueMaximalSequence) {
  auto rep = saturated(half_fibers("kondo6"));
  ASSERT_FALSE(rep.census.empty());
  EXPECT_EQ(rep.census[0].length, 10u);
  EXPECT_EQ(rep.census[0].count, 1u);
  EXPECT_EQ(rep.census[0].types_label(), "10 x (1 A1HF + 1 A2F + 1 A5F)");
  EXPECT_EQ(rep.count_of_length(10), 1u);
}

TEST(Saturated, GoldenCensusCounts) {
  using Counts = std::map<std::size_t, std::size_t>;
  const std::map<std::string, Counts> expected = {
      {"mlp1", {{8, 8}, {7, 24}, {5, 40}}},
      {"mlp2", {{5, 3}, {3, 8}}},
      {"kondo1", {{4, 2}, {3, 4}}},
      {"kondo2", {{7, 1}}},
      {"kondo6", {{10, 1}}},
  };
  for (const auto &[id, counts] : expected) {
    auto rep = saturated(half_fibers(id));
    for (const auto &[len, count] : counts)
      EXPECT_EQ(rep.count_of_length(len), count) << id << " length " << len;
  }
}

TEST(Saturated, Mlp1LengthFiveRows) {
  auto rep = saturated(half_fibers("mlp1"));
  std::map<std::string, std::size_t> rows;
  for (const auto &r : rep.census)
    if (r.length == 5)
      rows[r.types_label()] = r.count;
  EXPECT_EQ(rows.size(), 2u);
  std::size_t total = 0;
  for (const auto &[label, count] : rows)
    total += count;
  EXPECT_EQ(total, 40u);
  std::set<std::size_t> counts;
  for (const auto &[label, count] : rows)
    counts.insert(count);
  EXPECT_EQ(counts, (std::set<std::size_t>{8, 32}));
}

TEST(Saturated, MatchesDefinition) {
  for (const auto &id : embedded_dataset_ids()) {
    const auto &hf = half_fibers(id);
    if (hf.size() > 60)
      continue;
    auto rep = saturated(hf);
    std::size_t total = 0;
    for (const auto &r : rep.census)
      total += r.count;
    EXPECT_EQ(total, rep.sequences.size());
    for (const auto &s : rep.sequences) {
      EXPECT_TRUE(pairwise_compatible(hf, s.members)) << id;
      EXPECT_TRUE(is_saturated(hf, s)) << id;
    }
    if (!rep.census.empty()) {
      EXPECT_EQ(static_cast<int>(rep.census.front().length), cnd(hf)) << id;
    }
  }
}

TEST(Saturated, EverySequenceExtendsToASaturatedOne) {
  for (const auto &id : small_ids) {
    const auto &hf = half_fibers(id);
    auto sat = saturated(hf).sequences;
    for (const auto &s : enumerate_sequences(hf)) {
      bool contained = std::any_of(sat.begin(), sat.end(), [&](const IsotropicSequence &t) {
        return std::includes(t.members.begin(), t.members.end(), s.members.begin(),
                             s.members.end());
      });
      EXPECT_TRUE(contained) << id;
    }
    auto all = enumerate_sequences(hf);
    std::set<IsotropicSequence> saturated_by_definition;
    for (const auto &s : all)
      if (is_saturated(hf, s))
        saturated_by_definition.insert(s);
    EXPECT_EQ(std::set<IsotropicSequence>(sat.begin(), sat.end()), saturated_by_definition);
  }
}

TEST(Saturated, CensusOrdering) {
  for (const auto &id : embedded_dataset_ids()) {
    auto rep = saturated(half_fibers(id));
    for (std::size_t i = 1; i < rep.census.size(); ++i) {
      const auto &a = rep.census[i - 1];
      const auto &b = rep.census[i];
      EXPECT_TRUE(a.length > b.length ||
                  (a.length == b.length && a.types_label() < b.types_label()))
          << id;
    }
  }
}

TEST(Extension, KondoIPAndQ) {
  const auto &hf = half_fibers("kondo1");
  IsotropicSequence seq{{fib("kondo1", "1/2(R10+R11)"), fib("kondo1", "R9+R10"),
                         fib("kondo1", "1/2(2R1+2R2+2R3+2R4+2R5+R6+R8+R9+R12)"),
                         fib("kondo1", "1/2(2R1+R2+R4+2R5+2R6+2R7+2R8+R9+R12)")}};
  std::sort(seq.members.begin(), seq.members.end());
  auto exts = extend_to_canonical(seq, hf);
  EXPECT_EQ(exts.size(), 8u);

  const ChainMap p = {{0, {"R12"}}, {1, {"R1"}}, {2, {"R7", "R6"}}, {3, {"R3", "R4"}}};
  const ChainMap q = {{0, {"R9"}}, {2, {"R7", "R6", "R5"}}, {3, {"R3", "R2"}}};
  std::map<ChainMap, std::vector<std::string>> found;
  for (const auto &e : exts)
    found[chains(e, hf)] = fano_report(e, dataset("kondo1").basis, hf).singularities;
  ASSERT_TRUE(found.count(p));
  ASSERT_TRUE(found.count(q));
  EXPECT_EQ(found[p], (std::vector<std::string>{"A1", "A1", "A2", "A2"}));
  EXPECT_EQ(found[q], (std::vector<std::string>{"A1", "A2", "A3"}));
}

TEST(Extension, DeltaInvariantsOnAllExtensions) {
  for (const auto &id : small_ids) {
    const auto &hf = half_fibers(id);
    const auto &basis = dataset(id).basis;
    for (const auto &s : saturated(hf).sequences)
      for (const auto &e : extend_to_canonical(s, hf, 50)) {
        ASSERT_EQ(e.length(), 10u);
        FanoReport rep = fano_report(e, basis, hf);
        EXPECT_TRUE(basis.in_num(rep.delta));
        EXPECT_EQ(pairing(rep.delta, rep.delta, hf.matrix), 10);
        auto cls = e.classes();
        for (std::size_t a = 0; a < cls.size(); ++a) {
          EXPECT_EQ(pairing(rep.delta, cls[a], hf.matrix), 3);
          EXPECT_EQ(pairing(cls[a], cls[a], hf.matrix), 0);
          for (std::size_t b = a + 1; b < cls.size(); ++b)
            EXPECT_EQ(pairing(cls[a], cls[b], hf.matrix), 1);
        }
        std::size_t contracted = 0;
        for (std::size_t b = 0; b < e.base_classes.size(); ++b)
          contracted += e.chain_of(b).size();
        EXPECT_EQ(contracted, rep.contracted_curves.size());
        EXPECT_EQ(contracted + s.length(), 10u);
      }
  }
}

TEST(Extension, FullSequenceHasOneTrivialExtension) {
  const auto &hf = half_fibers("kondo6");
  auto rep = saturated(hf);
  ASSERT_EQ(rep.sequences.front().length(), 10u);
  auto exts = extend_to_canonical(rep.sequences.front(), hf);
  ASSERT_EQ(exts.size(), 1u);
  EXPECT_TRUE(exts[0].degenerate_members.empty());
  FanoReport f = fano_report(exts[0], dataset("kondo6").basis, hf);
  EXPECT_TRUE(f.singularities.empty());
}

TEST(Extension, LimitIsRespected) {
  const auto &hf = half_fibers("kondo1");
  auto seq = saturated(hf).sequences.front();
  EXPECT_EQ(extend_to_canonical(seq, hf, 3).size(), 3u);
}

TEST(Extension, RejectsDegenerateInput) {
  const auto &hf = half_fibers("kondo1");
  std::size_t a = 0, b = 0;
  for (std::size_t i = 0; i < hf.size() && !b; ++i)
    for (std::size_t j = i + 1; j < hf.size(); ++j)
      if (!hf.compatible[i].test(j)) {
        a = i;
        b = j;
        break;
      }
  ASSERT_NE(b, 0u);
  EXPECT_THROW(extend_to_canonical({{a, b}}, hf), input_error);
  EXPECT_THROW(extend_to_canonical({{}}, hf), input_error);
  EXPECT_THROW(extend_to_canonical({{hf.size()}}, hf), input_error);
}

TEST(Extension, FanoNeedsLengthTen) {
  const auto &hf = half_fibers("kondo1");
  CanonicalExtension short_ext{{{0}}, {hf.fibrations[0].half_fiber_class}, {}};
  EXPECT_THROW(fano_report(short_ext, dataset("kondo1").basis, hf), input_error);
}
