#include <gtest/gtest.h>

#include <set>

#include "joinopt/relset.hpp"

namespace joinopt {
namespace {

TEST(SmallRelSet, BasicOperations) {
  const auto a = SmallRelSet::of({0, 3, 5});
  const auto b = SmallRelSet::of({3, 7});
  EXPECT_EQ(a.count(), 3U);
  EXPECT_EQ(a | b, SmallRelSet::of({0, 3, 5, 7}));
  EXPECT_EQ(a & b, SmallRelSet::of({3}));
  EXPECT_EQ(a - b, SmallRelSet::of({0, 5}));
  EXPECT_TRUE(SmallRelSet::of({3}).is_subset_of(a));
  EXPECT_FALSE(b.is_subset_of(a));
  EXPECT_EQ(a.lowest(), 0U);
  EXPECT_EQ(b.lowest_singleton(), SmallRelSet::singleton(3));
  EXPECT_LT(SmallRelSet::of({0, 1}), SmallRelSet::of({2}));

  std::vector<std::size_t> members(a.begin(), a.end());
  EXPECT_EQ(members, (std::vector<std::size_t>{0, 3, 5}));
  EXPECT_EQ(to_string(a), "{0,3,5}");
}

TEST(RelSet, WideSetsAcrossWords) {
  RelSet s(130);
  s.insert(0);
  s.insert(64);
  s.insert(129);
  EXPECT_EQ(s.count(), 3U);
  EXPECT_TRUE(s.contains(129));
  EXPECT_FALSE(s.contains(128));
  std::vector<std::size_t> members(s.begin(), s.end());
  EXPECT_EQ(members, (std::vector<std::size_t>{0, 64, 129}));

  const RelSet t = RelSet::of(130, {64, 100});
  EXPECT_EQ((s & t).count(), 1U);
  EXPECT_EQ((s | t).count(), 4U);
  EXPECT_EQ((s - t), RelSet::of(130, {0, 129}));
  EXPECT_TRUE(RelSet::of(130, {64}).is_subset_of(s));
  EXPECT_THROW(s.insert(130), ContractViolation);
  EXPECT_THROW((void)(s | RelSet(20)), ContractViolation);
}

TEST(RelSet, OrderMatchesNumericValue) {
  EXPECT_LT(RelSet::of(100, {0, 1, 2}), RelSet::of(100, {70}));
  EXPECT_LT(RelSet::of(100, {5}), RelSet::of(100, {0, 5}));
  const auto small = SmallRelSet::of({1, 4, 9});
  EXPECT_EQ(RelSet::from_small(small, 20).to_small(), small);
}

TEST(Unrank, ExtremeRanks) {
  EXPECT_EQ(unrank_combination(0, 2, 4), SmallRelSet::of({0, 1}));
  EXPECT_EQ(unrank_combination(5, 2, 4), SmallRelSet::of({2, 3}));
  EXPECT_THROW(unrank_combination(6, 2, 4), ContractViolation);
}

TEST(Unrank, DistinctOutputsForSixChooseThree) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t r = 0; r < 20; ++r) {
    const auto s = unrank_combination(r, 3, 6);
    EXPECT_EQ(s.count(), 3U);
    EXPECT_TRUE(s.is_subset_of(SmallRelSet::prefix(6)));
    seen.insert(s.bits());
  }
  EXPECT_EQ(seen.size(), 20U);
}

TEST(Unrank, RoundTripAndGosperOrderUpToTwelve) {
  for (std::size_t n = 1; n <= 12; ++n) {
    for (std::size_t k = 1; k <= n; ++k) {
      std::uint64_t bits = SmallRelSet::prefix(k).bits();
      for (std::uint64_t r = 0; r < binomial(n, k); ++r) {
        const auto s = unrank_combination(r, k, n);
        ASSERT_EQ(s.bits(), bits) << "n=" << n << " k=" << k << " r=" << r;
        ASSERT_EQ(combination_rank(s), r);
        bits = next_combination(bits);
      }
    }
  }
}

TEST(Deposit, PositionalPlacement) {
  const auto superset = SmallRelSet::of({2, 5, 9});
  EXPECT_EQ(deposit_subset(0b101, superset), SmallRelSet::of({2, 9}));
  EXPECT_EQ(deposit_subset(0b111, superset), superset);
  EXPECT_THROW(deposit_subset(0, superset), ContractViolation);
  EXPECT_THROW(deposit_subset(0b1000, superset), ContractViolation);
}

TEST(Deposit, AllMasksGiveAllNonemptySubsets) {
  const auto superset = SmallRelSet::of({1, 4, 6});
  std::set<std::uint64_t> seen;
  for (std::uint64_t mask = 1; mask < 8; ++mask) {
    const auto s = deposit_subset(mask, superset);
    EXPECT_TRUE(s.is_subset_of(superset));
    EXPECT_EQ(s.count(), static_cast<std::size_t>(std::popcount(mask)));
    seen.insert(s.bits());
  }
  EXPECT_EQ(seen.size(), 7U);
}

TEST(Deposit, MatchesSoftwareLoopOnWideSupersets) {
  const std::uint64_t superset = 0x8000'f0f0'0000'1235ULL;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << std::popcount(superset)); mask = mask * 3 + 1) {
    std::uint64_t expected = 0;
    std::uint64_t m = mask;
    for (std::uint64_t s = superset; s != 0; s &= s - 1, m >>= 1)
      if (m & 1U) expected |= s & (~s + 1);
    EXPECT_EQ(deposit_bits(mask, superset), expected);
  }
}

TEST(Binomial, SmallValues) {
  EXPECT_EQ(binomial(4, 2), 6U);
  EXPECT_EQ(binomial(25, 12), 5200300U);
  EXPECT_EQ(binomial(3, 5), 0U);
  EXPECT_EQ(binomial(64, 32), 1832624140942590534ULL);
}

}  // namespace
}  // namespace joinopt
