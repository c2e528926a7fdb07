#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "qform/cli.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = qform::cli::main(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, ExceptionsQ80) {
  const auto r = run({"exceptions", "--form", "Q80^1", "--bound", "1000"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["missing"], json::array({24}));
}

TEST(Cli, Lambda2CheckIsometric) {
  auto r = run({"lambda2", "--form", "Q24^1", "--check-isometric", "Q6^1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(json::parse(r.out)["isometric"].get<bool>());
  r = run({"lambda2", "--form", "Q24^1", "--check-isometric", "Q7^1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(json::parse(r.out)["isometric"].get<bool>());
}

TEST(Cli, EnumerateAcceptsSextupleAndCoreLabel) {
  auto r = run({"enumerate", "--form", "1,1,1,0,0,0", "--n", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["count"], 8);
  r = run({"enumerate", "--form", "N5", "--n", "14", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("coords,primitive", 0), 0u) << r.out;
}

TEST(Cli, IsometricAndLocalrep) {
  auto r = run({"isometric", "--form", "Q24^6", "--form2", "Q24^6"});
  EXPECT_EQ(r.code, 0) << r.err;
  r = run({"localrep", "--form", "N7", "--n", "10", "--p", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_FALSE(json::parse(r.out)["represented"].get<bool>());
  r = run({"localrep", "--form", "1 1 0 0 0 0", "--n", "4", "--p", "2", "--primitive"});
  EXPECT_EQ(r.code, 2);  // not a valid sextuple: b = 0
}

TEST(Cli, ExceptionsDefaultBound) {
  const auto r = run({"exceptions", "--form", "Q95^1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["bound"], 10000);
  EXPECT_EQ(j["missing"], json::array({4, 12, 25}));
}

TEST(Cli, CorpusStats) {
  const auto r = run({"corpus", "--stats"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["forms"], 152);
  EXPECT_EQ(j["primitively_universal"], 107);
  EXPECT_EQ(j["almost_universal"], 45);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"exceptions", "--bound", "10"}).code, 2);
  EXPECT_EQ(run({"exceptions", "--form", "Q80^1", "--bound", "0"}).code, 2);
  EXPECT_EQ(run({"exceptions", "--form", "Q999^1", "--bound", "10"}).code, 2);
  EXPECT_EQ(run({"exceptions", "--form", "1 1 1 1 0 0", "--bound", "10"}).code, 2);
  EXPECT_EQ(run({"verify", "--suite", "nope"}).code, 2);
  EXPECT_EQ(run({"localrep", "--form", "Q2^1", "--n", "5", "--p", "9"}).code, 2);
  EXPECT_EQ(run({"corpus", "--stats", "--format", "yaml"}).code, 2);
  EXPECT_EQ(run({"corpus", "--stats", "--workers", "0"}).code, 2);
}

TEST(Cli, CorpusErrorsExitThree) {
  EXPECT_EQ(run({"corpus", "--stats", "--corpus", "/nonexistent/corpus.jsonl"}).code, 3);
  const std::string path = ::testing::TempDir() + "bad_corpus.jsonl";
  std::ofstream(path) << "{\"id\":\"Q7^1\"}\n";
  EXPECT_EQ(run({"corpus", "--stats", "--corpus", path}).code, 3);
  ::setenv("QFORM_CORPUS", path.c_str(), 1);
  EXPECT_EQ(run({"corpus", "--stats"}).code, 3);
  ::setenv("QFORM_CORPUS", QFORM_TEST_CORPUS, 1);
  EXPECT_EQ(run({"corpus", "--stats"}).code, 0);
  ::unsetenv("QFORM_CORPUS");
}

TEST(Cli, OverflowExitsFour) {
  // p^2 exceeds the supported local precision.
  EXPECT_EQ(run({"localrep", "--form", "Q2^1", "--n", "5", "--p", "3037000493"}).code, 4);
}

TEST(Cli, VerifyJsonIsDeterministic) {
  const auto a = run({"verify", "--suite", "lemmas", "--bound", "400", "--no-timing", "--workers", "1"});
  const auto b = run({"verify", "--suite", "lemmas", "--bound", "400", "--no-timing", "--workers", "4"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto j = json::parse(a.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  for (const auto& rep : j["reports"]) {
    EXPECT_TRUE(rep.contains("check_id"));
    EXPECT_TRUE(rep.contains("params"));
    EXPECT_TRUE(rep.contains("counterexamples"));
    EXPECT_FALSE(rep.contains("wall_time_ms"));
  }
}

TEST(Cli, VerifyWindowAndTextFormat) {
  const auto r = run({"verify", "--suite", "watson", "--bound", "200", "--format", "text"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("18/18 checks passed"), std::string::npos) << r.out;
  EXPECT_EQ(run({"verify", "--suite", "recipes", "--window", "5:3"}).code, 2);
}

TEST(Cli, HelpExitsZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("exceptions"), std::string::npos);
}
