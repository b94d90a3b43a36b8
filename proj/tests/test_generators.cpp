#include <gtest/gtest.h>

#include <functional>
#include <numeric>
#include <set>

#include "cardvote/bounds.hpp"
#include "cardvote/errors.hpp"
#include "cardvote/generators.hpp"
#include "cardvote/properties.hpp"
#include "test_util.hpp"

using namespace cardvote;
using namespace cardvote::test;

namespace {

Rational l1(const Preference& a, std::span<const Rational> b) {
  Rational d = 0;
  for (int j = 0; j < a.m(); ++j) d += abs(a.values()[j] - b[j]);
  return d;
}

// Oracle: every strictly decreasing level assignment along the voter's strict
// order with the ends pinned to 1 and 0; smallest L1, then lexicographically
// smallest value vector.
std::vector<Rational> discretize_oracle(const Preference& u, int k) {
  const int m = u.m();
  std::vector<int> order(u.order().begin(), u.order().end());
  std::vector<int> levels(m, 0);
  levels[order[0] - 1] = k;
  std::optional<std::pair<Rational, std::vector<Rational>>> best;
  std::function<void(int, int)> rec = [&](int r, int above) {
    if (r == m - 1) {
      std::vector<Rational> vals;
      for (int l : levels) vals.push_back(make_rational(l, k));
      Rational d = 0;
      for (int j = 0; j < m; ++j) d += abs(vals[j] - u.values()[j]);
      if (!best || d < best->first || (d == best->first && vals < best->second)) best.emplace(d, vals);
      return;
    }
    for (int l = m - 1 - r; l < above; ++l) {
      levels[order[r] - 1] = l;
      rec(r + 1, l);
    }
  };
  rec(1, k);
  return best->second;
}

std::vector<Rational> vals(const Preference& p) { return {p.values().begin(), p.values().end()}; }

}  // namespace

TEST(Negative, ParametersAndShape) {
  auto p = NegativeConstructionParams::make(27);
  EXPECT_EQ(p.k, 3);
  EXPECT_EQ(p.g_count, 9);
  EXPECT_EQ(p.n, 35);
  std::set<int> covered;
  for (const auto& b : p.blocks) {
    EXPECT_LE(static_cast<int>(b.size()), p.k);
    for (int j : b) EXPECT_TRUE(covered.insert(j).second);
  }
  EXPECT_EQ(covered.size(), 26u);
  EXPECT_THROW(gen_negative(7), PreconditionError);
}

TEST(Negative, WelfareGapAndNormalization) {
  for (int m : {8, 27, 30, 64}) {
    auto u = gen_negative(m);
    auto p = NegativeConstructionParams::make(m);
    ASSERT_EQ(u.n(), p.n);
    EXPECT_TRUE(u.is_normalized());
    EXPECT_TRUE(u.is_tie_free());
    auto w = welfares(u);
    const long mm = m;
    Rational other_cap = 2 + make_rational(1, mm);
    for (int j = 0; j < m - 1; ++j) EXPECT_LT(w[j], other_cap) << "m=" << m << " j=" << j + 1;
    EXPECT_EQ(rv_winner(u), m);
    // candidate m beats every other by the construction's factor
    Rational gap = Rational(p.g_count) * (1 - make_rational(1, mm * mm)) / other_cap;
    for (int j = 0; j < m - 1; ++j) EXPECT_GE(w[m - 1], gap * w[j]);
  }
}

TEST(Negative, RepeatDoublesWelfare) {
  auto once = gen_negative(64), twice = gen_negative(64, 2);
  EXPECT_EQ(twice.n(), 158);
  EXPECT_EQ(welfare(twice, 64), 2 * welfare(once, 64));
}

TEST(Dk, AllTopBlocksOnCandidateOne) {
  for (int m : {8, 27}) {
    const int K = static_cast<int>(floor_cbrt(m));
    const int k = 4 * m;
    std::vector<DkVoterShape> shapes;
    std::vector<int> ranking(m);
    std::iota(ranking.begin(), ranking.end(), 1);
    for (int i = 0; i < 3; ++i) shapes.push_back({ranking, 1});
    auto u = gen_Dk({.m = m, .k = k, .a = 3, .b = 0, .c = 0, .shapes = shapes}, 0);
    EXPECT_EQ(gbar_value(u), Rational(1, 2) + make_rational(1, 2 * K));
  }
  std::vector<int> ranking{1, 2, 3, 4, 5, 6, 7, 8};
  auto u = gen_Dk({.m = 8, .k = 32, .a = 2, .b = 0, .c = 0, .shapes = {{ranking, 1}, {ranking, 1}}}, 0);
  EXPECT_EQ(gbar_value(u), Rational(3, 4));
}

TEST(Dk, VotersFallInTheirDeclaredClass) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    for (int m : {8, 27}) {
      DkParams params{.m = m, .k = 4 * m + static_cast<int>(seed), .a = 2, .b = 3, .c = 2, .shapes = {}};
      auto u = gen_Dk(params, seed);
      ASSERT_EQ(u.n(), 7);
      for (int i = 1; i <= u.n(); ++i) {
        auto c = classify(u.voter(i), params.k);
        ASSERT_EQ(c.switches, 2);
        bool expected = i <= 2 ? c.in_Da : i <= 5 ? c.in_Db : c.in_Dc;
        ASSERT_TRUE(expected) << "seed=" << seed << " m=" << m << " voter=" << i;
        for (int j = 0; j < m; ++j)
          ASSERT_LE(abs(u.voter(i).values()[j] - c.rounded[j]), make_rational(m - 1, params.k));
      }
    }
  }
  EXPECT_THROW(gen_Dk({.m = 8, .k = 31, .a = 1, .b = 0, .c = 0, .shapes = {}}, 0), PreconditionError);
  EXPECT_THROW(gen_Dk({.m = 8, .k = 32, .a = 0, .b = 2, .c = 0, .shapes = {}}, 0), PreconditionError);
  EXPECT_THROW(gen_Dk({.m = 7, .k = 32, .a = 1, .b = 0, .c = 0, .shapes = {}}, 0), PreconditionError);
}

TEST(Dk, SameSeedSameProfile) {
  DkParams params{.m = 8, .k = 64, .a = 1, .b = 1, .c = 1, .shapes = {}};
  EXPECT_EQ(gen_Dk(params, 5), gen_Dk(params, 5));
}

TEST(Cyclic, Construction) {
  const Rational eps = make_rational(1, 27);
  auto u = gen_cyclic(3, 2, eps);
  auto w = welfares(u);
  EXPECT_GT(w[1], 1);
  EXPECT_LT(w[1], 1 + 3 * eps);
  EXPECT_LT(w[0], 3 * eps);
  EXPECT_LT(w[2], 3 * eps);
  for (int m : {3, 5, 10}) {
    const long mm = m;
    Rational e = make_rational(1, mm * mm * mm);
    auto base = gen_cyclic(m, 1, e);
    for (int star = 1; star <= m; ++star) {
      auto v = gen_cyclic(m, star, e);
      EXPECT_TRUE(v.is_tie_free());
      EXPECT_TRUE(ordinal_equivalent(base, v));
      EXPECT_EQ(v.voter(star).value(star), 1);
      for (int i = 1; i <= m; ++i) {
        EXPECT_EQ(v.voter(i).order()[0], i);
        for (int j = 1; j <= m; ++j)
          if (!(i == star && j == star)) {
            EXPECT_GT(v.voter(i).value(j), 0);
            EXPECT_LT(v.voter(i).value(j), e);
          }
      }
    }
  }
  Rational e5 = make_rational(1, 125);
  EXPECT_LT(ratio(j_star(5), gen_cyclic(5, 4, e5)), make_rational(1, 5) + 25 * e5);
  EXPECT_THROW(gen_cyclic(3, 1, make_rational(1, 9)), PreconditionError);
  EXPECT_THROW(gen_cyclic(3, 4, make_rational(1, 27)), PreconditionError);
}

TEST(Discretize, PinnedExample) {
  auto u = discretize(U({{"1", "1/2", "1/2", "0"}}), 100);
  EXPECT_EQ(vals(u.voter(1)), R({"1", "1/2", "49/100", "0"}));
  EXPECT_EQ(vals(u.voter(1)), discretize_oracle(P({"1", "1/2", "1/2", "0"}), 100));
}

TEST(Discretize, GridInputUnchanged) {
  auto u = U({{"1", "3/10", "0", "7/10"}, {"0", "1", "1/10", "2/10"}});
  EXPECT_EQ(discretize(u, 10), u);
}

TEST(Discretize, MatchesBruteForceOracle) {
  Rng rng{23};
  for (int t = 0; t < 300; ++t) {
    int m = 3 + rng.below(3);
    int k = m - 1 + rng.below(8);
    std::vector<Rational> raw;
    for (int j = 0; j < m; ++j) raw.push_back(make_rational(rng.below(13), 12));
    raw[rng.below(m)] = 0;
    raw[rng.below(m)] = 1;
    if (std::count(raw.begin(), raw.end(), Rational(0)) == 0) raw[(rng.below(m))] = 0;
    Preference u = normalize(raw);
    auto out = discretize(Profile({u}), k).voter(1);
    ASSERT_TRUE(out.is_tie_free());
    ASSERT_TRUE(out.is_normalized());
    ASSERT_TRUE(std::equal(out.order().begin(), out.order().end(), u.order().begin()));
    auto oracle = discretize_oracle(u, k);
    ASSERT_EQ(vals(out), oracle) << "m=" << m << " k=" << k << " l1 " << to_string(l1(out, oracle));
  }
  EXPECT_THROW(discretize(U({{"1", "1/2", "1/4", "0"}}), 2), PreconditionError);
}

TEST(Discretize, Idempotent) {
  Rng rng{61};
  for (int t = 0; t < 100; ++t) {
    int m = 3 + rng.below(4);
    auto u = random_grid_profile(rng, m, 2, 9);
    int k = 10 * m;
    auto once = discretize(u, k);
    ASSERT_EQ(discretize(once, k), once);
  }
}

TEST(Discretize, PreservesJStar) {
  Rng rng{29};
  for (int t = 0; t < 40; ++t) {
    int m = 8 + rng.below(3);
    auto u = random_grid_profile(rng, m, 4, 7);
    auto d = discretize(u, 10 * m);
    EXPECT_EQ(j_star(m)(d), j_star(m)(u));
  }
}

TEST(SampleGrid, MembershipAndDeterminism) {
  auto a = sample_grid_profile(4, 5, 6, true, 9);
  EXPECT_EQ(a, sample_grid_profile(4, 5, 6, true, 9));
  EXPECT_TRUE(a.is_tie_free());
  auto grid = enumerate_Rk_prefs(4, 6, false);
  std::set<Preference> members(grid.begin(), grid.end());
  auto b = sample_grid_profile(4, 50, 6, false, 3);
  for (const auto& p : b.prefs()) EXPECT_TRUE(members.count(p));
}
