#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "seprate/cli.hpp"

using namespace seprate;
using nlohmann::json;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("seprate_cli_" + name);
}

}  // namespace

TEST(Cli, TestAccepts) {
  const CliRun r = run({"test", "--body", R"({"variant":"orthant","d":3})", "--mu", "-1,-1,-1", "--n", "100"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_FALSE(j["reject"].get<bool>());
  EXPECT_EQ(j["config"]["n"], 100.0);
}

TEST(Cli, TestRejects) {
  const CliRun r = run({"test", "--body", R"({"variant":"orthant","d":3})", "--mu", "[5,5,5]", "--n", "100"});
  EXPECT_EQ(r.code, kExitReject) << r.err;
  EXPECT_TRUE(json::parse(r.out)["reject"].get<bool>());
}

TEST(Cli, ReproducibleWithSeed) {
  const std::vector<std::string> args = {"test", "--body", R"({"variant":"ball","d":2,"radius":1})", "--mu",
                                         "1,0", "--test", "ball", "--seed", "12"};
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, ConfigFileSuppliesFlags) {
  const auto path = temp_path("config.json");
  std::ofstream(path) << R"({"body":{"variant":"halfspace","d":2},"mu":[0,0],"test":"halfspace","n":50})";
  const CliRun r = run({"test", "--config", path.string(), "--seed", "3"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["config"]["n"], 50.0);
  EXPECT_EQ(j["config"]["seed"], 3);
  std::filesystem::remove(path);
}

TEST(Cli, Errors) {
  EXPECT_EQ(run({}).code, kExitError);
  EXPECT_EQ(run({"test", "--mu", "1"}).code, kExitError);
  const CliRun bad_json = run({"test", "--body", "{not json", "--mu", "1"});
  EXPECT_EQ(bad_json.code, kExitError);
  EXPECT_NE(bad_json.err.find("seprate: error:"), std::string::npos);
  EXPECT_EQ(run({"test", "--body", R"({"variant":"orthant","d":2})", "--mu", "1"}).code, kExitError);
  EXPECT_EQ(run({"sweep", "--axis", "n", "--values", "", "--body", "halfspace"}).code, kExitError);
  EXPECT_EQ(run({"lowerbound", "--kind", "ball", "--d", "2", "--R", "1"}).code, kExitError);
  EXPECT_EQ(run({"check", "--suite", "unknown"}).code, kExitError);
  EXPECT_EQ(run({"bogus"}).code, kExitError);
}

TEST(Cli, HelpExitsZero) {
  const CliRun r = run({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("sweep"), std::string::npos);
  EXPECT_EQ(run({"sweep", "--help"}).code, kExitOk);
}

TEST(Cli, LowerboundTwoPoint) {
  const CliRun r = run({"lowerbound", "--kind", "two-point", "--n", "100", "--eta", "0.5"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NEAR(json::parse(r.out)["rho"].get<double>(), 0.0832554611157697756, 1e-15);
}

TEST(Cli, SweepWritesCsvAndFit) {
  const auto csv = temp_path("sweep.csv");
  const CliRun r = run({"sweep", "--axis", "n", "--values", "100,400,1600,6400", "--body", "halfspace", "--reps",
                     "1000", "--out", csv.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "body,d,n,R,eta,rho_hat,alpha_hat,beta_hat,reps,seed");
  auto fit_path = csv;
  fit_path.replace_extension(".fit.json");
  ASSERT_TRUE(std::filesystem::exists(fit_path)) << fit_path;
  const json fit = json::parse(std::ifstream(fit_path));
  EXPECT_TRUE(fit.contains("slope"));
  std::filesystem::remove(csv);
  std::filesystem::remove(fit_path);
}

TEST(Cli, CheckRoundingPasses) {
  const CliRun r = run({"check", "--suite", "rounding"});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  EXPECT_NE(r.out.find("PASS*"), std::string::npos);
}
