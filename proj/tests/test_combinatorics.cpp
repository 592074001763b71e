#include <gtest/gtest.h>

#include <map>
#include <set>

#include "tak/board.hpp"
#include "tak/combinatorics.hpp"
#include "tak/errors.hpp"

using namespace tak;

namespace {

// Compositions of `total` into at most `parts` positive parts, by brute force
// over cut sets.
std::set<std::vector<int>> compositions_by_cuts(int total) {
  std::set<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << (total - 1)); ++mask) {
    std::vector<int> parts{1};
    for (int i = 0; i < total - 1; ++i) {
      if (mask & (1u << i))
        parts.push_back(1);
      else
        ++parts.back();
    }
    out.insert(parts);
  }
  return out;
}

}  // namespace

TEST(Falls, CountMatchesEnumeration) {
  for (int t = 1; t <= 10; ++t)
    for (int n = 1; n <= 10; ++n) {
      const auto patterns = fall_patterns(t, n);
      const std::uint64_t expected = (std::uint64_t{1} << std::min(n, t)) - 1;
      ASSERT_EQ(fall_count(t, n), expected) << t << " " << n;
      ASSERT_EQ(patterns.size(), expected) << t << " " << n;
    }
}

TEST(Falls, PatternsAreCompositionsOfEachTakenCount) {
  for (int t = 1; t <= 8; ++t)
    for (int n = 1; n <= 8; ++n) {
      std::set<std::vector<int>> seen;
      for (const FallPattern& p : fall_patterns(t, n)) {
        int sum = 0;
        for (int d : p.drops) {
          ASSERT_GE(d, 1);
          sum += d;
        }
        ASSERT_EQ(sum, p.taken);
        ASSERT_LE(p.taken, std::min(t, n));
        ASSERT_TRUE(seen.insert(p.drops).second);
      }
      std::set<std::vector<int>> all;
      for (int k = 1; k <= std::min(t, n); ++k)
        for (const auto& c : compositions_by_cuts(k)) all.insert(c);
      ASSERT_EQ(seen, all);
    }
}

TEST(Falls, FourStoneTower) {
  std::vector<std::vector<int>> taken_four;
  for (const FallPattern& p : fall_patterns(4, 4))
    if (p.taken == 4) taken_four.push_back(p.drops);
  const std::vector<std::vector<int>> expected = {{1, 1, 1, 1}, {1, 1, 2}, {1, 2, 1}, {1, 3},
                                                  {2, 1, 1},    {2, 2},    {3, 1},    {4}};
  EXPECT_EQ(taken_four, expected);
}

TEST(Falls, Ordering) {
  const auto p = fall_patterns(3, 3);
  ASSERT_EQ(p.size(), 7u);
  EXPECT_EQ(p[0].drops, std::vector<int>{1});
  EXPECT_EQ(p[1].drops, (std::vector<int>{1, 1}));
  EXPECT_EQ(p[2].drops, std::vector<int>{2});
  EXPECT_EQ(p[6].drops, std::vector<int>{3});
}

TEST(Falls, RejectsNonPositive) {
  EXPECT_THROW(fall_patterns(0, 3), DomainError);
  EXPECT_THROW(fall_count(3, 0), DomainError);
}

TEST(GameLength, StoneBudget) {
  const std::map<int, int> f = {{3, 10}, {4, 15}, {5, 22}, {6, 31}, {7, 42}, {8, 52}};
  for (auto [n, budget] : f) {
    EXPECT_EQ(stone_budget(n), budget);
    const StoneCounts s = stone_counts(n);
    EXPECT_EQ(s.flats + s.capstones, budget);
    for (int k = 1; k <= 10; ++k)
      EXPECT_EQ(game_length_bound(n, k), static_cast<std::uint64_t>(2 * budget * k));
  }
  EXPECT_THROW(stone_budget(2), DomainError);
  EXPECT_THROW(game_length_bound(3, 0), DomainError);
}

TEST(GameLength, StoneTable) {
  EXPECT_EQ(stone_counts(3), (StoneCounts{10, 0}));
  EXPECT_EQ(stone_counts(4), (StoneCounts{15, 0}));
  EXPECT_EQ(stone_counts(5), (StoneCounts{21, 1}));
  EXPECT_EQ(stone_counts(6), (StoneCounts{30, 1}));
  EXPECT_EQ(stone_counts(7), (StoneCounts{40, 2}));
  EXPECT_EQ(stone_counts(8), (StoneCounts{50, 2}));
  EXPECT_THROW(stone_counts(9), DomainError);
}
