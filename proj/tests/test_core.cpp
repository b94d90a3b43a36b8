#include <gtest/gtest.h>

#include "cardvote/errors.hpp"
#include "test_util.hpp"

using namespace cardvote;
using namespace cardvote::test;

TEST(Preference, RejectsValuesOutsideUnitInterval) {
  EXPECT_THROW(Preference::normalized(R({"0", "3/2"})), NormalizationError);
  EXPECT_THROW(Preference::relaxed(R({"0", "-1/2"})), NormalizationError);
  EXPECT_THROW(Preference::normalized(R({"0", "1/2"})), NormalizationError);  // max != 1
  EXPECT_THROW(Preference::normalized(R({"1"})), PreconditionError);
}

TEST(Preference, StrictOrderBreaksTiesByLowerIndex) {
  auto u = P({"0", "1", "1", "1/2"});
  std::vector<int> order(u.order().begin(), u.order().end());
  EXPECT_EQ(order, (std::vector<int>{2, 3, 4, 1}));
  EXPECT_EQ(u.position(3), 2);
  EXPECT_TRUE(u.prefers(2, 3));
  EXPECT_FALSE(u.is_tie_free());
  EXPECT_TRUE(P({"1", "1/2", "0"}).is_tie_free());
}

TEST(Normalize, AffineRescaling) {
  auto u = normalize(R({"0.2", "0.6", "0.4"}));
  EXPECT_EQ(std::vector<Rational>(u.values().begin(), u.values().end()), R({"0", "1", "1/2"}));
  auto v = normalize(R({"0", "1"}));
  EXPECT_EQ(std::vector<Rational>(v.values().begin(), v.values().end()), R({"0", "1"}));
  EXPECT_THROW(normalize(R({"1", "1", "1"})), NormalizationError);
}

TEST(Welfare, SumsColumn) {
  EXPECT_EQ(welfare(U({{"1", "0"}, {"1", "0"}}), 1), 2);
  EXPECT_EQ(welfare(U({{"1", "0", "1/2"}, {"0", "1", "1/2"}}), 3), 1);
  EXPECT_EQ(welfare(U({{"1", "0"}}), 2), 0);
  EXPECT_THROW(welfare(U({{"1", "0"}}), 3), IndexError);
}

TEST(RvWinner, LowestIndexArgmax) {
  EXPECT_EQ(rv_winner(U({{"1", "1/2", "0"}, {"0", "1", "1/2"}})), 2);
  EXPECT_EQ(rv_winner(U({{"1", "0"}, {"0", "1"}})), 1);
  EXPECT_EQ(rv_winner(U({{"0", "1"}})), 2);
}

TEST(Ratio, UndefinedOnZeroWelfare) {
  std::vector<Preference> prefs{Preference::relaxed(R({"0", "0"}))};
  Profile u(prefs);
  EXPECT_THROW(ratio(CandidateDistribution::point(2, 1), u), UndefinedRatioError);
}

TEST(Rank, CountsWeaklyBetterCandidates) {
  EXPECT_EQ(rank(P({"1", "1/2", "0"}), 1), 1);
  EXPECT_EQ(rank(P({"1", "1/2", "0"}), 3), 3);
  EXPECT_EQ(rank(P({"0", "1/4", "1/2", "1"}), 2), 3);
  EXPECT_THROW(rank(P({"1", "1", "0"}), 1), PreconditionError);
}

TEST(TopQ, NameTieBreak) {
  EXPECT_EQ(top_q_set(P({"1", "1/2", "0"}), 2), (std::vector<int>{1, 2}));
  EXPECT_EQ(top_q_set(P({"1", "1", "0"}), 1), (std::vector<int>{1}));
  EXPECT_EQ(top_q_set(P({"0", "1", "1"}), 1), (std::vector<int>{2}));
  EXPECT_THROW(top_q_set(P({"0", "1", "1"}), 4), IndexError);
  EXPECT_THROW(top_q_set(P({"0", "1", "1"}), 0), IndexError);
}

TEST(Distribution, Validates) {
  EXPECT_THROW(CandidateDistribution(R({"1/2", "1/3"})), PreconditionError);
  EXPECT_THROW(CandidateDistribution(R({"3/2", "-1/2"})), PreconditionError);
  EXPECT_EQ(CandidateDistribution::point(3, 2).prob(2), 1);
}

TEST(Profile, RequiresCommonCandidateCount) {
  EXPECT_THROW(Profile({P({"1", "0"}), P({"1", "0", "0"})}), PreconditionError);
  EXPECT_THROW(Profile(std::vector<Preference>{}), PreconditionError);
  auto u = concat(U({{"1", "0"}}), U({{"0", "1"}}));
  EXPECT_EQ(u.n(), 2);
  EXPECT_EQ(u.voter(2), P({"0", "1"}));
}

TEST(CoreProperties, WelfareAdditiveUnderConcat) {
  Rng rng{41};
  for (int t = 0; t < 200; ++t) {
    int m = 2 + rng.below(4);
    auto u = random_grid_profile(rng, m, 1 + rng.below(4), 5), v = random_grid_profile(rng, m, 1 + rng.below(4), 5);
    auto uv = concat(u, v);
    for (int j = 1; j <= m; ++j) ASSERT_EQ(welfare(uv, j), welfare(u, j) + welfare(v, j));
  }
}

TEST(CoreProperties, RatioAtMostOne) {
  Rng rng{43};
  for (int t = 0; t < 200; ++t) {
    int m = 2 + rng.below(4);
    auto u = random_grid_profile(rng, m, 1 + rng.below(4), 5);
    std::vector<Rational> p(m);
    int total = 0;
    for (auto& x : p) total += static_cast<int>((x = rng.below(5)).get_num().get_si());
    if (total == 0) p[0] = total = 1;
    for (auto& x : p) x /= total;
    Rational r = ratio(CandidateDistribution(p), u);
    ASSERT_LE(r, 1);
    ASSERT_EQ(ratio(CandidateDistribution::point(m, rv_winner(u)), u), 1);
  }
}

TEST(CoreProperties, TopQNestedAndAgreesWithRank) {
  Rng rng{47};
  for (int t = 0; t < 300; ++t) {
    int m = 2 + rng.below(5);
    auto u = random_grid_pref(rng, m, m + rng.below(4));
    for (int q = 1; q < m; ++q) {
      auto small = top_q_set(u, q), big = top_q_set(u, q + 1);
      ASSERT_TRUE(std::equal(small.begin(), small.end(), big.begin()));
    }
    if (!u.is_tie_free()) continue;
    for (int q = 1; q <= m; ++q) {
      auto set = top_q_set(u, q);
      for (int j = 1; j <= m; ++j)
        ASSERT_EQ(std::find(set.begin(), set.end(), j) != set.end(), rank(u, j) <= q);
    }
  }
}
