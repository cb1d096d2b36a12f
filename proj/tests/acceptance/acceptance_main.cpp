// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Tolerances are fixed here and not tuned.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "support/cli_runner.hpp"
#include "support/random_models.hpp"
#include "wsrel/absorption.hpp"
#include "wsrel/availability.hpp"
#include "wsrel/monitor.hpp"
#include "wsrel/profile_io.hpp"
#include "wsrel/simulator.hpp"

namespace {

using namespace wsrel;
using namespace wsrel::test;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, std::string note) {
    if (!ok) pass = false;
    notes.push_back((ok ? "ok   " : "FAIL ") + std::move(note));
  }
};

double seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

// 1. Worked example: availability of MTBF 71394 h / MTTR 1 h.
Outcome workedExample() {
  Outcome o;
  const auto run = runWsrel({"avail", "--mtbf", "71394", "--mttr", "1", "--json"});
  o.check(run.code == 0, fmt::format("exit code {}", run.code));
  const double value = nlohmann::json::parse(run.out)["value"].get<double>();
  o.check(std::abs(value - 0.99998599) <= 1e-8, fmt::format("availability {:.12f} vs 0.99998599 +- 1e-8", value));
  const auto text = runWsrel({"avail", "--mtbf", "71394", "--mttr", "1"});
  o.check(contains(text.out, "paper_precision_percent: 99.9985%"),
          "truncated rendering 99.9985% documents the printed figure");
  return o;
}

// 2. Table 1 reproduction under truncating 4-decimal-percent rendering.
Outcome table1() {
  Outcome o;
  const auto run = runWsrel({"compose", "table1", "--paper-precision"});
  o.check(run.code == 0, fmt::format("exit code {}", run.code));
  const std::vector<std::pair<std::string, std::string>> printed = {
      {"Reservation", "99.9972"},     {"Accommodation", "99.9976"},        {"Hotel", "99.9975"},
      {"Investment", "99.9977"},      {"Loan", "99.9973"},                 {"Finance", "99.9974"},
      {"Advanced Search", "99.9975"}, {"Quick Search", "99.9974"},         {"Keyword based Search", "99.9976"},
  };
  std::istringstream lines(run.out);
  std::vector<std::pair<std::string, std::string>> rendered;
  for (std::string line; std::getline(lines, line);) {
    // Service rows: "  <name padded to 24> <cell> <source>"
    if (line.size() < 28 || line.rfind("  ", 0) != 0 || !contains(line, "mtbf_mttr")) continue;
    std::string name = line.substr(2, 24);
    name.erase(name.find_last_not_of(' ') + 1);
    std::istringstream rest(line.substr(26));
    std::string cell;
    rest >> cell;
    rendered.emplace_back(name, cell);
  }
  o.check(rendered.size() == printed.size(), fmt::format("{} service rows rendered", rendered.size()));
  for (std::size_t i = 0; i < printed.size() && i < rendered.size(); ++i) {
    o.check(rendered[i] == printed[i], fmt::format("{}: rendered {} vs printed {}", printed[i].first,
                                                   rendered[i].second, printed[i].second));
  }
  return o;
}

// 3. Hand-solvable fixtures to 1e-12; 50 random models vs 10^6 walks.
Outcome absorption() {
  Outcome o;
  const auto start = Clock::now();
  const std::vector<std::pair<std::string, double>> fixtures = {
      {"direct_edge", 0.7}, {"self_loop", 8.0 / 9.0}, {"two_node", 0.85}};
  for (const auto& [name, expected] : fixtures) {
    const auto run = runWsrel({"solve", dataPath("models/" + name + ".json"), "--json"});
    const double got = nlohmann::json::parse(run.out)["reliability"].get<double>();
    o.check(std::abs(got - expected) <= 1e-12, fmt::format("{}: {:.15f} vs {:.15f}", name, got, expected));
  }

  std::mt19937_64 rng(20240601);
  int within = 0;
  for (int i = 0; i < 50; ++i) {
    const auto m = randomValidModel(rng, 12);
    const double p = solveAbsorption(m).reliability;
    const auto est = walkAbsorption(m, {1000000, static_cast<std::uint64_t>(1000 + i), 100000});
    const bool censorOk = est.censoredWalks * 1000 < est.trials;
    const double se = std::max(est.standardError, std::sqrt(p * (1.0 - p) / static_cast<double>(est.trials)));
    const double z = se > 0 ? std::abs(est.pCorrectHat - p) / se : (est.pCorrectHat == p ? 0.0 : 1e9);
    const bool ok = censorOk && z <= 3.0;
    within += ok ? 1 : 0;
    if (!ok)
      o.check(false, fmt::format("model {} ({} nodes): analytic {:.6f}, walk {:.6f}, z = {:.2f}, censored {}", i,
                                 m.nodes().size(), p, est.pCorrectHat, z, est.censoredWalks));
  }
  o.check(within == 50, fmt::format("{}/50 random models within 3 SE", within));
  const double t = seconds(start);
  o.check(t < 60.0, fmt::format("runtime {:.1f} s < 60 s", t));
  return o;
}

// 4. Formula inversions over sampled domains.
Outcome roundTrips() {
  Outcome o;
  const auto start = Clock::now();
  std::mt19937_64 rng(4);
  auto rel = [](double got, double want) { return want == 0 ? std::abs(got) : std::abs(got - want) / want; };

  std::uniform_real_distribution<double> lambdaDist(0.0, 1e3), tmDist(0.0, 1e3);
  int samples = 0;
  double worst = 0.0;
  while (samples < 10000) {
    const double l = lambdaDist(rng), tm = tmDist(rng);
    if (tm == 0.0) continue;
    worst = std::max(worst, rel(failureIntensityFromAvailability(tm, availabilityFromDowntime(tm, l)), l));
    ++samples;
  }
  o.check(worst <= 1e-12, fmt::format("availability <-> intensity: {} samples, worst rel err {:.3e}", samples, worst));

  std::uniform_real_distribution<double> lamDist(0.0, 1e2), tDist(0.0, 1e2);
  samples = 0;
  worst = 0.0;
  int underflow = 0;
  while (samples < 10000) {
    const double l = lamDist(rng), t = tDist(rng);
    if (l == 0.0 || t == 0.0) continue;
    const double r = reliabilityFromIntensity(l, t);
    // exp(-l t) leaves the normal double range once l t > ~708.
    if (r < std::numeric_limits<double>::min()) {
      ++underflow;
      continue;
    }
    worst = std::max(worst, rel(intensityFromReliability(r, t), l));
    ++samples;
  }
  o.check(worst <= 1e-12, fmt::format("reliability <-> intensity: {} samples ({} underflowed draws skipped), worst rel err {:.3e}",
                                      samples, underflow, worst));
  const double t = seconds(start);
  o.check(t < 10.0, fmt::format("runtime {:.2f} s < 10 s", t));
  return o;
}

// 5. Renewal logs and ensemble estimate against MTBF / (MTBF + MTTR).
Outcome renewal() {
  Outcome o;
  const auto start = Clock::now();
  const auto log = simulateRenewal(9.0, 1.0, 1e5, 7);
  const double avg = averageAvailability(log, 1e5);
  o.check(std::abs(avg - 0.9) <= 0.01, fmt::format("time average over 1e5 h: {:.5f}", avg));

  const auto ens = ensembleAvailability(9.0, 1.0, 100.0 * (9.0 + 1.0), 100000, 5);
  o.check(std::abs(ens.availability - 0.9) <= 3 * ens.standardError,
          fmt::format("ensemble at t = 1000 h: {:.5f} +- {:.5f}", ens.availability, ens.standardError));
  const double t = seconds(start);
  o.check(t < 60.0, fmt::format("runtime {:.1f} s < 60 s", t));
  return o;
}

// 6. Bundled Pascal-triangle model is reliable, and the walk oracle agrees.
Outcome pascalTriangle() {
  Outcome o;
  const auto run = runWsrel({"solve", "pascal_triangle", "--json"});
  const auto j = nlohmann::json::parse(run.out);
  const double p = j["reliability"].get<double>();
  o.check(j["isReliable"].get<bool>(), fmt::format("isReliable with pCorrect(W1) = {:.6f}", p));
  const auto walk = runWsrel({"simulate", "walk", "pascal_triangle", "--trials", "1000000", "--seed", "42", "--json"});
  const auto w = nlohmann::json::parse(walk.out);
  const double hat = w["estimate"].get<double>();
  const double se = w["standardError"].get<double>();
  o.check(std::abs(hat - p) <= 3 * se, fmt::format("walk {:.6f} +- {:.6f} vs analytic {:.6f}", hat, se, p));
  o.check(w["censoredWalks"].get<std::uint64_t>() * 1000 < 1000000, "censoring below 0.1%");
  return o;
}

// 7. Unavailability of the worked example and the note on the misquote.
Outcome misprint() {
  Outcome o;
  const auto run = runWsrel({"avail", "--mtbf", "71394", "--mttr", "1"});
  o.check(contains(run.out, "unavailability_percent: 0.0014007%"), "unavailability 0.0014007%");
  o.check(contains(run.out, "0.000141%") && contains(run.out, "inconsistent"), "note on the 0.000141% figure");
  return o;
}

std::string runProcess(const std::string& args) {
  const std::string cmd = std::string(WSREL_CLI_PATH) + " " + args + " 2>/dev/null";
  std::string out;
  if (FILE* pipe = popen(cmd.c_str(), "r")) {
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    pclose(pipe);
  }
  return out;
}

// 8. Identical commands and seeds give byte-identical stdout.
Outcome determinism() {
  Outcome o;
  const std::vector<std::vector<std::string>> commands = {
      {"validate", "pascal_triangle"},
      {"solve", "pascal_triangle", "--json"},
      {"solve", "self_loop", "--iterative"},
      {"avail", "--mtbf", "71394", "--mttr", "1"},
      {"compose", "table1", "--paper-precision"},
      {"compose", "table1", "--json"},
      {"monitor", dataPath("profiles/up_down_up.csv"), "--limits", "--at", "3.5", "--window", "10"},
      {"simulate", "walk", "pascal_triangle", "--trials", "100000", "--seed", "42"},
      {"simulate", "renewal", "--mtbf", "9", "--mttr", "1", "--horizon", "10000", "--seed", "7"},
      {"simulate", "ensemble", "--mtbf", "9", "--mttr", "1", "--t", "100", "--trials", "20000", "--seed", "3"},
  };
  for (const auto& c : commands) {
    std::string joined;
    for (const auto& a : c) joined += (joined.empty() ? "" : " ") + a;
    const auto first = runWsrel(c).out;
    const bool inProcess = first == runWsrel(c).out;
    const bool crossProcess = first == runProcess(joined) && first == runProcess(joined);
    o.check(inProcess && crossProcess && !first.empty(), joined);
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1 worked example availability 0.99998599 +- 1e-8", workedExample},
      {"AC2 Table 1 availability column at truncated precision", table1},
      {"AC3 absorption: hand fixtures and 50 random models vs walk oracle", absorption},
      {"AC4 formula round trips to 1e-12 relative", roundTrips},
      {"AC5 renewal time average and ensemble availability", renewal},
      {"AC6 Pascal-triangle model is reliable", pascalTriangle},
      {"AC7 unavailability 0.0014007% with misquote note", misprint},
      {"AC8 byte-identical output on repeated runs", determinism},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << fmt::format(" ({:.2f} s)", seconds(start)) << "\n";
    for (const auto& n : o.notes) std::cout << "         " << n << "\n";
    failed += o.pass ? 0 : 1;
  }
  std::cout << fmt::format("{}/{} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
