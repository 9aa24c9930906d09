#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include "golayfuzz/fuzzy_dictionary.hpp"
#include "test_support.hpp"

namespace golayfuzz {
namespace {

using Dict = FuzzyDictionary<std::uint32_t>;

std::set<std::uint32_t> info_set(const IndexSet& s) {
  std::set<std::uint32_t> out;
  for (InfoWord12 i : s) out.insert(i.value());
  return out;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> brute_force(const std::vector<Word23>& keys, Word23 q, int hd) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint32_t i = 0; i < keys.size(); ++i) {
    if (hamming_distance(keys[i], q) <= hd) out.emplace_back(keys[i].value(), i);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> as_pairs(const std::vector<Dict::Match>& ms) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (const auto& m : ms) out.emplace_back(m.key.value(), m.payload);
  std::sort(out.begin(), out.end());
  return out;
}

TEST(FuzzyHash, CodewordHasSingleIndex) {
  const IndexSet h = fuzzy_hash(Word23(0));
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h[0], InfoWord12(0));
  for (std::uint32_t m = 1; m < 4096; m += 131) {
    const IndexSet hc = fuzzy_hash(encode(InfoWord12(m)));
    ASSERT_EQ(hc.size(), 1u);
    EXPECT_EQ(hc[0], InfoWord12(m));
  }
}

TEST(FuzzyHash, SizeFollowsErrorWeight) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 50000; ++i) {
    const Word23 w = testing::random_word(rng);
    const auto size = fuzzy_hash(w).size();
    ASSERT_TRUE(size == 1 || size == 6);
    ASSERT_EQ(size == 6, decode(w).error_weight == 3);
  }
}

TEST(FuzzyHash, WeightThreeWordIndexesItsFiveDistanceFourNeighbours) {
  const auto codewords = testing::codewords_by_division();
  std::mt19937_64 rng(19);
  for (int i = 0; i < 300; ++i) {
    const std::uint32_t m = rng() & 0xFFF;
    const Word23 w = encode(InfoWord12(m)) ^ Word23(testing::random_pattern_of_weight(rng, 3));
    std::set<std::uint32_t> expected{m};
    for (std::uint32_t info = 0; info < 4096; ++info) {
      if (std::popcount(codewords[info] ^ w.value()) == 4) expected.insert(info);
    }
    ASSERT_EQ(expected.size(), 6u);
    ASSERT_EQ(info_set(fuzzy_hash(w)), expected);
  }
}

TEST(FuzzyHash, OverlapWithinDistanceTwo) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 2000; ++i) {
    const Word23 w = testing::random_word(rng);
    const IndexSet hw = fuzzy_hash(w);
    for_each_pattern_up_to(2, [&](Word23 e) {
      EXPECT_TRUE(hw.intersects(fuzzy_hash(w ^ e))) << to_hex(w) << " ^ " << to_hex(e);
      return true;
    });
  }
}

TEST(Perturbations, CountsMatchBinomialSums) {
  const std::array<int, 8> expected = {1, 24, 277, 2048, 10903, 44552, 145499, 390656};
  for (int r = 0; r < 8; ++r) {
    int n = 0;
    std::set<std::uint32_t> seen;
    for_each_pattern_up_to(r, [&](Word23 e) {
      EXPECT_LE(e.weight(), r);
      if (r <= 3) seen.insert(e.value());
      ++n;
      return true;
    });
    EXPECT_EQ(n, expected[r]) << r;
    if (r <= 3) {
      EXPECT_EQ(static_cast<int>(seen.size()), n);
    }
  }
  int stopped = 0;
  for_each_pattern_up_to(3, [&](Word23) { return ++stopped < 10; });
  EXPECT_EQ(stopped, 10);
}

TEST(FuzzyDictionary, InsertCodewordTouchesOneBucket) {
  Dict d;
  EXPECT_TRUE(d.insert(Word23(0), 1));
  EXPECT_EQ(d.bucket(InfoWord12(0)).size(), 1u);
  std::size_t occupied = 0;
  for (std::uint32_t b = 0; b < 4096; ++b) occupied += d.bucket(InfoWord12(b)).empty() ? 0 : 1;
  EXPECT_EQ(occupied, 1u);
}

TEST(FuzzyDictionary, InsertWeightThreeKeyTouchesSixBuckets) {
  Dict d;
  const Word23 key(0x000007);
  d.insert(key, 9);
  const auto h = fuzzy_hash(key);
  ASSERT_EQ(h.size(), 6u);
  for (std::uint32_t b = 0; b < 4096; ++b) {
    const bool expected = h.contains(InfoWord12(b));
    ASSERT_EQ(d.bucket(InfoWord12(b)).size(), expected ? 1u : 0u) << b;
  }
}

TEST(FuzzyDictionary, DuplicateInsertIsIdempotent) {
  Dict d;
  EXPECT_TRUE(d.insert(Word23(0x1234), 5));
  EXPECT_FALSE(d.insert(Word23(0x1234), 5));
  EXPECT_EQ(d.size(), 1u);
  EXPECT_TRUE(d.insert(Word23(0x1234), 6));
  EXPECT_EQ(d.size(), 2u);
  EXPECT_FALSE(d.insert(Word23(0x1234), 6));
  EXPECT_EQ(d.size(), 2u);
}

TEST(FuzzyDictionary, FreezeRejectsInsertAndKeepsLookups) {
  std::mt19937_64 rng(29);
  Dict d;
  std::vector<Word23> keys;
  for (std::uint32_t i = 0; i < 2000; ++i) {
    keys.push_back(testing::random_word(rng));
    d.insert(keys.back(), i);
  }
  std::vector<std::vector<Dict::Match>> before;
  std::vector<Word23> queries;
  for (int i = 0; i < 50; ++i) queries.push_back(testing::random_word(rng));
  for (Word23 q : queries) before.push_back(d.lookup(q, 4));
  d.freeze();
  d.freeze();
  EXPECT_TRUE(d.frozen());
  EXPECT_THROW(d.insert(Word23(1), 1), FrozenError);
  for (std::size_t i = 0; i < queries.size(); ++i) EXPECT_EQ(d.lookup(queries[i], 4), before[i]);
}

TEST(FuzzyDictionary, LookupRejectsDistanceOutOfRange) {
  Dict d;
  EXPECT_THROW(d.lookup(Word23(0), -1), ValidationError);
  EXPECT_THROW(d.lookup(Word23(0), 8), ValidationError);
  EXPECT_NO_THROW(d.lookup(Word23(0), 7));
}

TEST(FuzzyDictionary, LookupZeroIsExactMatch) {
  Dict d;
  d.insert(Word23(0x00ABCD), 1);
  d.insert(Word23(0x00ABCD), 2);
  d.insert(Word23(0x00ABCC), 3);
  const auto hits = d.lookup(Word23(0x00ABCD), 0);
  ASSERT_EQ(hits.size(), 2u);
  EXPECT_EQ(hits[0].payload, 1u);
  EXPECT_EQ(hits[1].payload, 2u);
  EXPECT_EQ(hits[0].distance, 0);
}

class LookupOracle : public ::testing::TestWithParam<int> {};

TEST_P(LookupOracle, EqualsLinearScan) {
  const int hd = GetParam();
  std::mt19937_64 rng(100 + hd);
  Dict d;
  std::vector<Word23> keys;
  for (std::uint32_t i = 0; i < 10000; ++i) {
    keys.push_back(testing::random_word(rng));
    d.insert(keys.back(), i);
  }
  d.freeze();
  const int queries = hd >= 6 ? 40 : 200;
  for (int i = 0; i < queries; ++i) {
    // Half the queries sit near a stored key so small radii have hits.
    Word23 q = testing::random_word(rng);
    if (i % 2 == 0) q = keys[rng() % keys.size()] ^ Word23(testing::random_pattern_of_weight(rng, hd % 4));
    const auto got = d.lookup(q, hd);
    for (const auto& m : got) {
      ASSERT_LE(m.distance, hd);
      ASSERT_EQ(m.distance, hamming_distance(m.key, q));
    }
    ASSERT_EQ(as_pairs(got), brute_force(keys, q, hd)) << "query " << to_hex(q) << " hd " << hd;
  }
}

INSTANTIATE_TEST_SUITE_P(AllRadii, LookupOracle, ::testing::Range(0, 8));

TEST(FuzzyDictionary, StatsEmpty) {
  const IndexStats st = Dict{}.stats();
  EXPECT_EQ(st.entries, 0u);
  EXPECT_EQ(st.size1, 0u);
  EXPECT_EQ(st.size6, 0u);
  EXPECT_EQ(st.occupied_buckets, 0u);
  EXPECT_EQ(st.min_bucket, 0u);
  EXPECT_EQ(st.max_bucket, 0u);
  EXPECT_EQ(st.mean_bucket, 0.0);
}

TEST(FuzzyDictionary, StatsCodewordsOnly) {
  Dict d;
  for (std::uint32_t m = 0; m < 4096; ++m) d.insert(encode(InfoWord12(m)), m);
  const IndexStats st = d.stats();
  EXPECT_EQ(st.size6, 0u);
  EXPECT_EQ(st.size1, 4096u);
  EXPECT_EQ(st.min_bucket, 1u);
  EXPECT_EQ(st.max_bucket, 1u);
  EXPECT_EQ(st.occupied_buckets, 4096u);
}

TEST(FuzzyDictionary, StatsSlotCountMatchesIndexSets) {
  std::mt19937_64 rng(31);
  Dict d;
  std::size_t expected_slots = 0;
  for (std::uint32_t i = 0; i < 5000; ++i) {
    const Word23 k = testing::random_word(rng);
    if (d.insert(k, i)) expected_slots += fuzzy_hash(k).size();
  }
  const IndexStats st = d.stats();
  EXPECT_EQ(st.slots, expected_slots);
  EXPECT_EQ(st.slots, st.size1 + 6 * st.size6);
}

TEST(FuzzyDictionary, SaveLoadRebuildsBuckets) {
  std::mt19937_64 rng(37);
  Dict d;
  for (std::uint32_t i = 0; i < 500; ++i) d.insert(testing::random_word(rng), i * 7);
  std::stringstream ss;
  d.save(ss);
  const std::string text = ss.str();
  EXPECT_EQ(text.substr(0, 2), "0x");
  Dict back = Dict::load(ss);
  ASSERT_EQ(back.size(), d.size());
  for (std::uint32_t b = 0; b < 4096; ++b) {
    const auto x = d.bucket(InfoWord12(b));
    const auto y = back.bucket(InfoWord12(b));
    ASSERT_TRUE(std::equal(x.begin(), x.end(), y.begin(), y.end(),
                           [](const auto& a, const auto& c) { return a.key == c.key && a.entry == c.entry; }));
  }
  std::stringstream again;
  back.save(again);
  EXPECT_EQ(again.str(), text);
}

TEST(FuzzyDictionary, StringPayloadsAndLoadErrors) {
  FuzzyDictionary<std::string> d;
  d.insert(Word23(0x10), "rec-a");
  d.insert(Word23(0x11), "rec-b");
  std::stringstream ss;
  d.save(ss);
  EXPECT_EQ(ss.str(), "0x000010,rec-a\n0x000011,rec-b\n");
  auto back = FuzzyDictionary<std::string>::load(ss);
  EXPECT_EQ(back.lookup(Word23(0x10), 1).size(), 2u);

  d.insert(Word23(1), "has,comma");
  std::stringstream sink;
  EXPECT_THROW(d.save(sink), ValidationError);
  std::stringstream bad("0x000010,1\nnot-a-line\n");
  EXPECT_THROW(Dict::load(bad), ValidationError);
  std::stringstream big("0x800000,1\n");
  EXPECT_THROW(Dict::load(big), ValidationError);
}

}  // namespace
}  // namespace golayfuzz
