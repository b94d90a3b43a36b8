#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "cardvote/errors.hpp"
#include "cardvote/fit.hpp"
#include "cardvote/generators.hpp"
#include "cardvote/io.hpp"
#include "test_util.hpp"

using namespace cardvote;
using namespace cardvote::test;
using nlohmann::json;

TEST(ProfileJson, RoundTrip) {
  auto u = U({{"1", "1/3", "0"}, {"0", "2/7", "1"}});
  auto doc = profile_to_json(u);
  EXPECT_EQ(doc["m"], 3);
  EXPECT_FALSE(doc.contains("relaxed"));
  EXPECT_EQ(profile_from_json(doc), u);
  EXPECT_EQ(profile_from_json(json::parse(doc.dump())), u);
}

TEST(ProfileJson, RelaxedAndHugeIntegers) {
  auto v = gen_cyclic(4, 2, make_rational(1, 64));
  auto doc = profile_to_json(v);
  EXPECT_TRUE(doc["relaxed"].get<bool>());
  EXPECT_EQ(profile_from_json(doc), v);
  Integer big("123456789012345678901234567890", 10);
  std::vector<Rational> values{1, Rational(big, big + 1), 0};
  Profile w({Preference::normalized(values)});
  EXPECT_EQ(profile_from_json(profile_to_json(w)), w);
}

TEST(ProfileJson, Rejects) {
  EXPECT_THROW(profile_from_json(json::parse(R"({"m":2,"n":1,"prefs":[[[1,2],[1,1]]]})")), NormalizationError);
  EXPECT_THROW(profile_from_json(json::parse(R"({"m":2,"n":2,"prefs":[[[0,1],[1,1]]]})")), ParseError);
  EXPECT_THROW(profile_from_json(json::parse(R"({"m":3,"n":1,"prefs":[[[0,1],[1,1]]]})")), ParseError);
  EXPECT_THROW(profile_from_json(json::parse(R"({"n":1})")), ParseError);
}

TEST(ProfileCsv, RoundTrip) {
  auto u = U({{"1", "1/3", "0"}, {"0", "2/7", "1"}});
  EXPECT_EQ(profile_from_csv(profile_to_csv(u)), u);
  EXPECT_EQ(profile_from_csv("# note\n1,0.5,0\n\n0,1,1/4\n"), U({{"1", "1/2", "0"}, {"0", "1", "1/4"}}));
  EXPECT_THROW(profile_from_csv("1,0\n1,0,0\n"), PreconditionError);
  EXPECT_THROW(profile_from_csv("1,x\n"), ParseError);
}

TEST(LoadProfile, ByExtension) {
  auto u = U({{"1", "1/3", "0"}});
  std::string jpath = testing::TempDir() + "cv_profile.json", cpath = testing::TempDir() + "cv_profile.csv";
  std::ofstream(jpath) << profile_to_json(u).dump();
  std::ofstream(cpath) << profile_to_csv(u);
  EXPECT_EQ(load_profile(jpath), u);
  EXPECT_EQ(load_profile(cpath), u);
  EXPECT_THROW(load_profile(testing::TempDir() + "missing.json"), Error);
  std::remove(jpath.c_str());
  std::remove(cpath.c_str());
}

TEST(Decimal, TwelveSignificantDigits) {
  EXPECT_EQ(decimal(make_rational(1, 3)), "0.333333333333");
  EXPECT_EQ(decimal(make_rational(2, 3)), "0.666666666667");
  EXPECT_EQ(decimal(Rational(1)), "1");
  EXPECT_EQ(decimal(make_rational(1, 4)), "0.25");
  auto j = rational_json(make_rational(5, 6));
  EXPECT_EQ(j["exact"], "5/6");
}

TEST(Fit, PowerLawAndConstant) {
  std::vector<std::pair<double, double>> power, flat;
  for (double m : {8.0, 27.0, 64.0}) {
    power.emplace_back(m, std::pow(m, -2.0 / 3.0));
    flat.emplace_back(m, 0.5);
  }
  EXPECT_NEAR(fit_slope(power).slope, -2.0 / 3.0, 1e-12);
  EXPECT_NEAR(fit_slope(power).residual, 0.0, 1e-12);
  EXPECT_NEAR(fit_slope(flat).slope, 0.0, 1e-12);
  std::vector<std::pair<double, double>> two{{8, 1}, {27, 1}};
  EXPECT_THROW(fit_slope(two), DataError);
  std::vector<std::pair<double, double>> bad{{8, 1}, {27, 0}, {64, 1}};
  EXPECT_THROW(fit_slope(bad), DataError);
  std::vector<std::pair<double, double>> unsorted{{8, 1}, {8, 1}, {64, 1}};
  EXPECT_THROW(fit_slope(unsorted), DataError);
}
