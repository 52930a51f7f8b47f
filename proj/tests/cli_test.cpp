#include <gtest/gtest.h>

#include <sstream>

#include "asdist/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "asdist");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = asdist::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, SeriesText) {
  const auto r = invoke({"series", "--q", "2", "--p", "2", "--r", "1", "--genus", "0", "--order", "6"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1,0,6,0,24,0,96\n");
}

TEST(Cli, InfersCharacteristic) {
  const auto r = invoke({"series", "--q", "4", "--order", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1,0,30\n");
}

TEST(Cli, CompareMatches) {
  const auto r = invoke({"compare", "--q", "2", "--p", "2", "--r", "1", "--bound", "6"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("match 4/4 degrees"), std::string::npos);
}

TEST(Cli, ConstantReportsBothPaths) {
  const auto r = invoke({"constant", "--q", "2", "--p", "2", "--r", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("closed_form: 2\n"), std::string::npos);
  EXPECT_NE(r.out.find("tauberian: 2.000000"), std::string::npos);
}

TEST(Cli, JsonSchema) {
  const auto r = invoke({"count", "--q", "3", "--order", "3", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["command"], "count");
  EXPECT_EQ(doc["model"]["q"], 3);
  EXPECT_EQ(doc["group"]["p"], 3);
  EXPECT_EQ(doc["group"]["r"], 1);
  EXPECT_EQ(doc["meta"]["order"], 3);
  EXPECT_EQ(doc["meta"]["precision_bits"], 200);
  ASSERT_EQ(doc["data"].size(), 4u);
  EXPECT_EQ(doc["data"][0]["C"], 1);
}

TEST(Cli, TsvHasHeader) {
  const auto r = invoke({"series", "--q", "2", "--order", "2", "--format", "tsv"});
  EXPECT_EQ(r.out, "n\tvalue\n0\t1\n1\t0\n2\t6\n");
}

TEST(Cli, ConductorModule) {
  const auto r = invoke({"conductor", "--q", "2", "--module", "1.0^2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "c(1.0^2) = 2\n");
}

TEST(Cli, OracleAgreesWithSeries) {
  const auto o = invoke({"oracle", "--q", "3", "--r", "1", "--bound", "4", "--format", "tsv"});
  const auto s = invoke({"series", "--q", "3", "--r", "1", "--order", "4", "--format", "tsv"});
  ASSERT_EQ(o.code, 0);
  std::istringstream a(o.out), b(s.out);
  std::string la, lb;
  std::getline(a, la);
  std::getline(b, lb);
  while (std::getline(a, la) && std::getline(b, lb)) EXPECT_EQ(la, lb);
}

TEST(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(invoke({"series", "--q", "6"}).code, 2);
  EXPECT_EQ(invoke({"series", "--q", "2", "--format", "xml"}).code, 2);
  EXPECT_EQ(invoke({"series", "--q", "2", "--l-poly", "1,x"}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({"constant", "--q", "3", "--r", "2"}).code, 0);
  EXPECT_EQ(invoke({"oracle", "--q", "2", "--bound", "12", "--budget", "10"}).code, 2);
  EXPECT_EQ(invoke({"oracle", "--q", "2", "--genus", "1", "--l-poly", "1,-1,2"}).code, 2);
}

TEST(Cli, UnsupportedClosedFormStillReportsGeneric) {
  const auto r = invoke({"constant", "--q", "3", "--r", "2"});
  EXPECT_NE(r.out.find("closed_form: unavailable"), std::string::npos);
  EXPECT_NE(r.out.find("tauberian: "), std::string::npos);
}

TEST(Cli, DeterministicOutput) {
  const std::vector<std::string> args{"constant", "--q", "3", "--r", "1", "--format", "json"};
  EXPECT_EQ(invoke(args).out, invoke(args).out);
}

TEST(Cli, EveryCommandHasJson) {
  for (const std::string cmd : {"series", "count", "poles", "constant", "oracle", "compare", "disc"}) {
    const auto r = invoke({cmd, "--q", "2", "--format", "json"});
    ASSERT_EQ(r.code, 0) << cmd << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out)["command"], cmd);
  }
}
