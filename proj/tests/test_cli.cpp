#include <cstdio>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "support/cli_runner.hpp"
#include "wsrel/composition.hpp"
#include "wsrel/profile_io.hpp"

namespace wsrel::test {
namespace {

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

TEST(CliValidate, ExitCodes) {
  auto ok = runWsrel({"validate", dataPath("models/pascal_triangle.json")});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out, "OK\n");

  auto bad = runWsrel({"validate", dataPath("models/bad_row_sum.json")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_TRUE(contains(bad.out, "row sum != 1 at n"));

  auto cycle = runWsrel({"validate", dataPath("models/no_absorbing_path.json")});
  EXPECT_EQ(cycle.code, 1);
  EXPECT_TRUE(contains(cycle.out, "no absorbing path from a"));
  EXPECT_TRUE(contains(cycle.out, "no absorbing path from b"));

  EXPECT_EQ(runWsrel({"validate", "/nonexistent/model.json"}).code, 2);
  EXPECT_EQ(runWsrel({"validate", dataPath("models/bad_probability.json")}).code, 2);
}

TEST(CliValidate, BundledNameResolves) {
  EXPECT_EQ(runWsrel({"validate", "pascal_triangle"}).code, 0);
}

TEST(CliSolve, Reports) {
  auto loop = runWsrel({"solve", dataPath("models/self_loop.json")});
  EXPECT_EQ(loop.code, 0);
  EXPECT_TRUE(contains(loop.out, "reliability: 0.888889\n"));

  auto pascal = runWsrel({"solve", "pascal_triangle"});
  EXPECT_EQ(pascal.code, 0);
  EXPECT_TRUE(contains(pascal.out, "is_reliable: true\n"));

  auto fault = runWsrel({"solve", dataPath("models/always_fault.json")});
  EXPECT_TRUE(contains(fault.out, "reliability: 0\n"));
  EXPECT_TRUE(contains(fault.out, "is_reliable: false\n"));
}

TEST(CliSolve, JsonAndIterative) {
  auto direct = runWsrel({"solve", dataPath("models/two_node.json"), "--json"});
  ASSERT_EQ(direct.code, 0);
  const auto j = nlohmann::json::parse(direct.out);
  EXPECT_NEAR(j["reliability"].get<double>(), 0.85, 1e-12);
  EXPECT_EQ(j["isReliable"].get<bool>(), true);
  EXPECT_EQ(j["nodes"].size(), 2u);

  auto iter = runWsrel({"solve", dataPath("models/two_node.json"), "--json", "--iterative", "--tol", "1e-13"});
  ASSERT_EQ(iter.code, 0);
  EXPECT_NEAR(nlohmann::json::parse(iter.out)["reliability"].get<double>(), 0.85, 1e-12);
}

TEST(CliSolve, SolverErrorExitCode) {
  auto r = runWsrel({"solve", dataPath("models/self_loop.json"), "--iterative", "--max-iter", "1"});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(runWsrel({"solve", dataPath("models/bad_row_sum.json")}).code, 2);
}

TEST(CliAvail, WorkedExample) {
  auto r = runWsrel({"avail", "--mtbf", "71394", "--mttr", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "availability: 0.999985993416906\n")) << r.out;
  EXPECT_TRUE(contains(r.out, "paper_precision_percent: 99.9985%\n"));
  EXPECT_TRUE(contains(r.out, "availability_percent: 99.9986%\n"));
  EXPECT_TRUE(contains(r.out, "unavailability_percent: 0.0014007%\n"));
  EXPECT_TRUE(contains(r.out, "0.000141%"));
}

TEST(CliAvail, Families) {
  auto rel = runWsrel({"avail", "--lambda", "0", "--t", "100", "--reliability"});
  EXPECT_EQ(rel.code, 0);
  EXPECT_TRUE(contains(rel.out, "reliability: 1\n"));
  EXPECT_TRUE(contains(runWsrel({"avail", "--tm", "2", "--lambda", "0.5"}).out, "availability: 0.5\n"));
  EXPECT_TRUE(contains(runWsrel({"avail", "--tm", "2", "--a", "0.5"}).out, "failure_intensity: 0.5\n"));
  EXPECT_TRUE(contains(runWsrel({"avail", "--up", "3", "--down", "1"}).out, "availability: 0.75\n"));
  auto lam = runWsrel({"avail", "--r", "1", "--t", "7", "--json"});
  EXPECT_EQ(nlohmann::json::parse(lam.out)["value"].get<double>(), 0.0);
}

TEST(CliAvail, UsageErrors) {
  auto alone = runWsrel({"avail", "--mtbf", "71394"});
  EXPECT_EQ(alone.code, 4);
  EXPECT_TRUE(contains(alone.err, "--mtbf H --mttr H"));
  EXPECT_EQ(runWsrel({"avail", "--mtbf", "1", "--mttr", "1", "--tm", "1"}).code, 4);
  EXPECT_EQ(runWsrel({"avail", "--tm", "0", "--lambda", "1"}).code, 4);
  EXPECT_EQ(runWsrel({"avail", "--mtbf", "1", "--mttr", "1", "--reliability"}).code, 4);
  EXPECT_EQ(runWsrel({"avail", "--bogus"}).code, 4);
  EXPECT_EQ(runWsrel({}).code, 4);
}

TEST(CliCompose, SingletonAggregatesEqual) {
  auto r = runWsrel({"compose", dataPath("compositions/singleton.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "can exceed 100%): 100\n"));
  EXPECT_TRUE(contains(r.out, "mean % (paperSum / n): 100\n"));
  EXPECT_TRUE(contains(r.out, "seriesProduct % (product of per-service availabilities): 100\n"));
}

TEST(CliCompose, JsonMatchesLibrary) {
  auto r = runWsrel({"compose", "table1", "--json"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  std::ifstream in(dataPath("compositions/table1.json"));
  std::string text((std::istreambuf_iterator<char>(in)), {});
  const auto doc = parseCompositionSet(text);
  ASSERT_EQ(j["sets"].size(), doc.sets.size());
  for (std::size_t i = 0; i < doc.sets.size(); ++i) {
    const auto rep = evaluateComposition(doc.sets[i]);
    const auto& s = j["sets"][i];
    EXPECT_EQ(s["paperSum"].get<double>(), rep.paperSum);
    EXPECT_EQ(s["mean"].get<double>(), rep.mean);
    EXPECT_EQ(s["seriesProduct"].get<double>(), rep.seriesProduct);
    for (std::size_t k = 0; k < rep.perService.size(); ++k)
      EXPECT_EQ(s["services"][k]["availability"].get<double>(), rep.perService[k].availability);
  }
}

TEST(CliCompose, OperationalProfileSource) {
  auto r = runWsrel({"compose", dataPath("compositions/monitored.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "operational_profile"));
  EXPECT_TRUE(contains(r.out, "90  "));
  EXPECT_EQ(runWsrel({"compose", "/nonexistent.json"}).code, 2);
}

TEST(CliMonitor, Queries) {
  const auto path = dataPath("profiles/up5_down5.csv");
  EXPECT_TRUE(contains(runWsrel({"monitor", path, "--window", "10"}).out, "average_availability(10): 0.5\n"));
  EXPECT_TRUE(contains(runWsrel({"monitor", path, "--at", "7"}).out, "M(7): 0\n"));
  EXPECT_EQ(runWsrel({"monitor", path, "--at", "11"}).code, 4);
  EXPECT_EQ(runWsrel({"monitor", path, "--window", "0"}).code, 4);
  auto lim = runWsrel({"monitor", path, "--limits", "--json"});
  ASSERT_EQ(lim.code, 0);
  EXPECT_EQ(nlohmann::json::parse(lim.out)["limitingEstimate"].get<double>(), 0.5);
}

TEST(CliSimulate, RenewalWritesValidProfile) {
  const auto out = std::filesystem::temp_directory_path() / "wsrel_cli_renewal.csv";
  auto r = runWsrel({"simulate", "renewal", "--mtbf", "9", "--mttr", "1", "--horizon", "100000", "--seed", "7", "-o",
                     out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(out);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  EXPECT_NO_THROW(parseOperationalProfile(text));
  auto lim = runWsrel({"monitor", out.string(), "--limits", "--json"});
  const auto series = nlohmann::json::parse(lim.out)["windowSeries"];
  EXPECT_NEAR(series.back()["average"].get<double>(), 0.9, 0.01);
  std::filesystem::remove(out);
}

TEST(CliSimulate, EnsembleAndWalk) {
  EXPECT_TRUE(contains(runWsrel({"simulate", "ensemble", "--mtbf", "9", "--mttr", "1", "--t", "0"}).out,
                       "ensemble_availability: 1\n"));
  auto walk = runWsrel({"simulate", "walk", "self_loop", "--trials", "10000", "--seed", "1", "--json"});
  ASSERT_EQ(walk.code, 0);
  EXPECT_NEAR(nlohmann::json::parse(walk.out)["estimate"].get<double>(), 8.0 / 9.0, 0.02);
  EXPECT_EQ(runWsrel({"simulate", "walk", "self_loop", "--trials", "0"}).code, 4);
  EXPECT_EQ(runWsrel({"simulate", "renewal", "--mtbf", "9"}).code, 4);
  EXPECT_EQ(runWsrel({"simulate", "renewal", "--mtbf", "-9", "--mttr", "1", "--horizon", "5"}).code, 4);
}

TEST(CliDeterminism, RepeatedRunsAreByteIdentical) {
  const std::vector<std::vector<std::string>> commands = {
      {"solve", "pascal_triangle"},
      {"compose", "table1", "--paper-precision"},
      {"simulate", "walk", "pascal_triangle", "--trials", "20000", "--seed", "9"},
      {"simulate", "renewal", "--mtbf", "9", "--mttr", "1", "--horizon", "1000", "--seed", "3"},
      {"simulate", "ensemble", "--mtbf", "9", "--mttr", "1", "--t", "50", "--trials", "5000", "--seed", "4"},
  };
  for (const auto& c : commands) EXPECT_EQ(runWsrel(c).out, runWsrel(c).out);
}

TEST(CliProcess, BinaryExitCodes) {
  auto status = [](const std::string& args) {
    const std::string cmd = std::string(WSREL_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    return WEXITSTATUS(raw);
  };
  EXPECT_EQ(status("validate " + dataPath("models/pascal_triangle.json")), 0);
  EXPECT_EQ(status("validate " + dataPath("models/bad_row_sum.json")), 1);
  EXPECT_EQ(status("validate /nonexistent"), 2);
  EXPECT_EQ(status("avail --mtbf 71394"), 4);
  EXPECT_EQ(status("--help"), 0);
}

}  // namespace
}  // namespace wsrel::test
