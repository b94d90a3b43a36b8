#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "cardvote/cli.hpp"
#include "cardvote/io.hpp"
#include "test_util.hpp"

using namespace cardvote;
using namespace cardvote::test;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) { return testing::TempDir() + name; }

}  // namespace

TEST(Cli, EvalFromProfileFile) {
  auto path = temp_path("cli_eval.json");
  std::ofstream(path) << profile_to_json(U({{"1", "0", "1/2"}, {"0", "1", "1/2"}, {"0", "1", "1/2"}})).dump();
  auto r = run({"eval", "--mech", "j1:1", "--profile", path});
  ASSERT_EQ(r.code, 0) << r.err;
  auto doc = json::parse(r.out);
  EXPECT_EQ(doc["ratio"]["exact"], "5/6");
  EXPECT_EQ(doc["distribution"]["exact"], json({"1/3", "2/3", "0"}));
  EXPECT_EQ(doc["config"], "cardvote eval --mech j1:1 --profile " + path);
  auto jstar = run({"eval", "--mech", "jstar", "--profile", path});
  EXPECT_EQ(jstar.code, 0) << jstar.err;
}

TEST(Cli, VerifyExitCodes) {
  auto ok = run({"verify", "truthful", "--mech", "j1:1", "--m", "2", "--n", "2", "--k", "2"});
  EXPECT_EQ(ok.code, kExitOk) << ok.err;
  EXPECT_EQ(json::parse(ok.out)["verdict"], "holds");
  auto bad = run({"verify", "truthful", "--mech", "rv", "--m", "3", "--n", "2", "--k", "10"});
  EXPECT_EQ(bad.code, kExitViolation);
  EXPECT_EQ(json::parse(bad.out)["verdict"], "violated");
}

TEST(Cli, ErrorsExitOne) {
  EXPECT_EQ(run({"eval", "--mech", "nonsense", "--gen", "negative:m=8"}).code, kExitError);
  EXPECT_EQ(run({"verify", "truthful", "--mech", "j1:1", "--m", "3", "--n", "3", "--k", "3", "--budget", "10"}).code,
            kExitError);
  EXPECT_EQ(run({"bogus"}).code, kExitError);
  EXPECT_EQ(run({}).code, kExitError);
  EXPECT_EQ(run({"eval", "--mech", "rv", "--profile", temp_path("does-not-exist.json")}).code, kExitError);
}

TEST(Cli, GenRoundTripsThroughEval) {
  auto path = temp_path("cli_gen.csv");
  auto g = run({"gen", "cyclic", "--m", "5", "--star", "2", "--format", "csv", "--out", path});
  ASSERT_EQ(g.code, 0) << g.err;
  auto e = run({"ratio", "--mech", "jstar", "--profile", path, "--relaxed"});
  ASSERT_EQ(e.code, 0) << e.err;
  auto direct = run({"ratio", "--mech", "jstar", "--gen", "cyclic:m=5,star=2"});
  EXPECT_EQ(json::parse(e.out)["ratio"], json::parse(direct.out)["ratio"]);
}

TEST(Cli, GenJsonFeedsEval) {
  auto path = temp_path("cli_gen.json");
  auto g = run({"gen", "dk", "--m", "8", "--a", "3", "--b", "2", "--c", "1", "--k", "512", "--seed", "4", "--out", path});
  ASSERT_EQ(g.code, 0) << g.err;
  auto e = run({"eval", "--mech", "jstar", "--profile", path});
  ASSERT_EQ(e.code, 0) << e.err;
  auto direct = run({"eval", "--mech", "jstar", "--gen", "dk:m=8,a=3,b=2,c=1,k=512", "--seed", "4"});
  EXPECT_EQ(json::parse(e.out)["distribution"], json::parse(direct.out)["distribution"]);
}

TEST(Cli, ExperimentCsvIsDeterministic) {
  std::vector<std::string> args{"experiment", "negative", "--m", "27,64", "--qs", "1,2"};
  auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.rfind("# cardvote experiment negative", 0), 0u);
  EXPECT_NE(a.out.find("m,n,q,mech,ratio,ratio_exact,m_pow_neg2_3"), std::string::npos);
}

TEST(Cli, FitReadsExperimentOutput) {
  auto path = temp_path("cli_fit.csv");
  auto e = run({"experiment", "negative", "--m", "27,64,125", "--qs", "2", "--out", path});
  ASSERT_EQ(e.code, 0) << e.err;
  auto f = run({"fit", "--in", path, "--where", "mech=j1"});
  ASSERT_EQ(f.code, 0) << f.err;
  auto doc = json::parse(f.out);
  EXPECT_EQ(doc["points"], 3);
  EXPECT_LT(doc["slope"].get<double>(), -0.55);
  EXPECT_GT(doc["slope"].get<double>(), -0.80);
}

TEST(Cli, ReduceAndProjectEmitSteps) {
  auto path = temp_path("cli_reduce.json");
  std::ofstream(path) << profile_to_json(U({{"1", "5/10", "4/10", "0"}})).dump();
  auto r = run({"reduce", "--profile", path, "--k", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_FALSE(json::parse(r.out)["steps"].empty());
  auto alias = run({"bounds", "reduce", "--profile", path, "--k", "10"});
  EXPECT_EQ(json::parse(alias.out)["steps"], json::parse(r.out)["steps"]);
  auto p = run({"project", "--gen", "dk:m=8,a=1,b=1,c=1,k=32", "--k", "32"});
  ASSERT_EQ(p.code, 0) << p.err;
  EXPECT_TRUE(json::parse(p.out)["steps"].empty());
}

TEST(Cli, LowerExperimentHasNoViolations) {
  auto r = run({"experiment", "lower", "--m", "8", "--n", "8", "--k", "64", "--seeds", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("m,", 0) == 0) continue;
    ++rows;
    EXPECT_EQ(line.find(",-"), std::string::npos) << line;  // slack never negative
  }
  EXPECT_GT(rows, 10);
}

TEST(Cli, J2QuotaOutsideRangeIsFlagged) {
  auto r = run({"eval", "--mech", "j2:1", "--gen", "negative:m=8"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["notes"].size(), 1u);
}
