#include "wsrel/cli.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "wsrel/absorption.hpp"
#include "wsrel/availability.hpp"
#include "wsrel/composition.hpp"
#include "wsrel/errors.hpp"
#include "wsrel/monitor.hpp"
#include "wsrel/profile_io.hpp"
#include "wsrel/render.hpp"
#include "wsrel/simulator.hpp"

#ifndef WSREL_DATA_DIR
#define WSREL_DATA_DIR ""
#endif

namespace wsrel {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

// Failure reading an input file (exit code 2).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Falls back to a bundled fixture when `name` is not an existing path,
// so `wsrel solve pascal_triangle` works from any directory.
fs::path resolveInput(const std::string& name, std::string_view kind, std::string_view extension) {
  fs::path path(name);
  if (fs::exists(path)) return path;
  const fs::path dataDir(WSREL_DATA_DIR);
  if (!dataDir.empty() && path.parent_path().empty()) {
    fs::path bundled = dataDir / kind / (name + std::string(extension));
    if (fs::exists(bundled)) return bundled;
  }
  return path;
}

std::string readFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw InputError("error while reading " + path.string());
  return buf.str();
}

void printWarnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << "\n";
}

struct Options {
  // shared
  bool json = false;
  bool lenient = false;
  bool paperPrecision = false;

  std::string modelPath;
  std::string setPath;
  std::string profilePath;

  // solve
  bool iterative = false;
  double tol = 1e-12;
  std::size_t maxIter = 1000000;

  // avail
  double mtbf = 0, mttr = 0, tm = 0, lambda = 0, a = 0, r = 0, t = 0, up = 0, down = 0;
  bool reliabilityFlag = false;

  // monitor
  std::optional<double> horizon;
  std::vector<double> at;
  std::vector<double> window;
  bool limits = false;

  // simulate
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  std::uint64_t maxSteps = 10000;
  std::string output;
  std::string serviceName = "simulated";
};

// ---------------------------------------------------------------- validate

int cmdValidate(const Options& o, std::ostream& out, std::ostream& err) {
  const auto path = resolveInput(o.modelPath, "models", ".json");
  const auto text = readFile(path);
  try {
    const auto doc = parseModel(text, {o.lenient});
    printWarnings(doc.warnings, err);
  } catch (const ValidationError& e) {
    for (const auto& v : e.violations()) out << "violation [" << v.rule << "] " << v.message << "\n";
    return kExitValidation;
  }
  out << "OK\n";
  return kExitOk;
}

// ------------------------------------------------------------------- solve

int cmdSolve(const Options& o, std::ostream& out, std::ostream& err) {
  const auto path = resolveInput(o.modelPath, "models", ".json");
  const auto doc = parseModel(readFile(path), {o.lenient});
  printWarnings(doc.warnings, err);

  const auto result = o.iterative ? solveAbsorptionIterative(doc.model, o.maxIter, o.tol)
                                  : solveAbsorption(doc.model);
  const auto& startRow = result.perNode.at(result.start);
  const char* method = o.iterative ? "iterative" : "direct";

  if (o.json) {
    ordered_json j;
    j["start"] = result.start.name;
    j["method"] = method;
    j["iterations"] = result.iterations;
    j["reliability"] = result.reliability;
    j["faultProbability"] = startRow.pFault;
    j["isReliable"] = result.isReliable();
    j["nodes"] = ordered_json::array();
    for (const auto& [node, row] : result.perNode)
      j["nodes"].push_back({{"node", node.name}, {"pCorrect", row.pCorrect}, {"pFault", row.pFault}});
    out << j.dump(2) << "\n";
    return kExitOk;
  }

  out << "start: " << result.start.name << "\n";
  out << "method: " << method << "\n";
  if (o.iterative) out << "iterations: " << result.iterations << "\n";
  out << "reliability: " << formatSignificant(result.reliability) << "\n";
  out << "fault_probability: " << formatSignificant(startRow.pFault) << "\n";
  out << "is_reliable: " << (result.isReliable() ? "true" : "false") << "\n";
  out << fmt::format("{:<12} {:>12} {:>12}\n", "node", "p_correct", "p_fault");
  for (const auto& [node, row] : result.perNode)
    out << fmt::format("{:<12} {:>12} {:>12}\n", node.name, formatSignificant(row.pCorrect),
                       formatSignificant(row.pFault));
  return kExitOk;
}

// ------------------------------------------------------------------- avail

struct Quantity {
  std::string name;
  std::string formula;
  double value = 0.0;
  bool isAvailability = false;
};

int cmdAvail(const Options& o, const std::set<std::string>& given, std::ostream& out, std::ostream& err) {
  auto family = [&](std::initializer_list<const char*> names) {
    std::set<std::string> want(names.begin(), names.end());
    return given == want;
  };

  Quantity q;
  if (family({"mtbf", "mttr"})) {
    q = {"availability", "MTBF / (MTBF + MTTR)", availabilityFromMtbfMttr({"service", o.mtbf, o.mttr}), true};
  } else if (family({"up", "down"})) {
    q = {"availability", "E[uptime] / (E[uptime] + E[downtime])",
         availabilityFromUptimeExpectations(o.up, o.down), true};
  } else if (family({"tm", "lambda"})) {
    q = {"availability", "1 / (1 + t_m * lambda_F)", availabilityFromDowntime(o.tm, o.lambda), true};
  } else if (family({"tm", "a"})) {
    q = {"failure_intensity", "(1 - A) / (t_m * A)", failureIntensityFromAvailability(o.tm, o.a)};
  } else if (family({"lambda", "t"})) {
    q = {"reliability", "exp(-lambda * t)", reliabilityFromIntensity(o.lambda, o.t)};
  } else if (family({"r", "t"})) {
    q = {"failure_intensity", "-ln(R) / t", intensityFromReliability(o.r, o.t)};
  } else {
    err << "error: supply exactly one flag family:\n"
           "  --mtbf H --mttr H        availability from MTBF/MTTR\n"
           "  --up H --down H          availability from expected uptime/downtime\n"
           "  --tm H --lambda L        availability from downtime per failure and failure intensity\n"
           "  --tm H --a A             failure intensity from availability\n"
           "  --lambda L --t T         reliability from failure intensity (--reliability)\n"
           "  --r R --t T              failure intensity from reliability\n";
    return kExitUsage;
  }
  if (o.reliabilityFlag && q.name != "reliability") {
    err << "error: --reliability only applies to --lambda/--t\n";
    return kExitUsage;
  }

  // Known misquote of the 71394 h / 1 h example: 0.000141% is ten times too small.
  const bool knownMisquote = family({"mtbf", "mttr"}) && o.mtbf == 71394.0 && o.mttr == 1.0;

  if (o.json) {
    ordered_json j;
    j["quantity"] = q.name;
    j["formula"] = q.formula;
    j["value"] = q.value;
    if (q.isAvailability) {
      j["availabilityPercent"] = q.value * 100.0;
      j["truncatedPercent"] = truncatedPercent(q.value);
      j["unavailabilityPercent"] = (1.0 - q.value) * 100.0;
    }
    out << j.dump(2) << "\n";
    return kExitOk;
  }

  out << "quantity: " << q.name << "\n";
  out << "formula: " << q.formula << "\n";
  out << q.name << ": " << formatExact(q.value) << "\n";
  if (q.isAvailability) {
    out << "availability_percent: " << formatSignificant(q.value * 100.0) << "%\n";
    out << "paper_precision_percent: " << truncatedPercent(q.value) << "%\n";
    out << "unavailability_percent: " << formatSignificant((1.0 - q.value) * 100.0, 5) << "%\n";
  }
  if (knownMisquote) {
    out << "note: the often-quoted unavailability of 0.000141% for MTBF 71394 h and MTTR 1 h "
           "is inconsistent with availability 71394/71395; the consistent figure is "
        << formatSignificant((1.0 - q.value) * 100.0, 5) << "%\n";
  }
  return kExitOk;
}

// ----------------------------------------------------------------- compose

std::string percentCell(double availability, bool paperPrecision) {
  return paperPrecision ? truncatedPercent(availability) : formatSignificant(availability * 100.0);
}

int cmdCompose(const Options& o, std::ostream& out, std::ostream& err) {
  const auto path = resolveInput(o.setPath, "compositions", ".json");
  const auto doc = parseCompositionSet(readFile(path), {o.lenient});
  printWarnings(doc.warnings, err);

  std::vector<CompositionReport> reports;
  for (const auto& set : doc.sets) {
    std::map<std::string, OperationalProfile> profiles;
    for (const auto& [key, ref] : doc.operationalProfiles) {
      if (key.first != set.name) continue;
      const auto profilePath = path.parent_path() / ref;
      try {
        profiles.emplace(key.second, parseOperationalProfile(readFile(profilePath)));
      } catch (const ParseError& e) {
        throw InputError(profilePath.string() + ": " + e.what());
      }
    }
    reports.push_back(evaluateComposition(set, profiles));
  }

  if (o.json) {
    ordered_json j;
    j["sets"] = ordered_json::array();
    for (const auto& r : reports) {
      ordered_json s;
      s["name"] = r.setName;
      s["services"] = ordered_json::array();
      for (const auto& svc : r.perService)
        s["services"].push_back(
            {{"name", svc.name}, {"availability", svc.availability}, {"source", toString(svc.source)}});
      s["paperSum"] = r.paperSum;
      s["mean"] = r.mean;
      s["seriesProduct"] = r.seriesProduct;
      j["sets"].push_back(std::move(s));
    }
    out << j.dump(2) << "\n";
    return kExitOk;
  }

  const bool pp = o.paperPrecision;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    if (i > 0) out << "\n";
    out << "composition set: " << r.setName << "\n";
    out << fmt::format("  {:<24} {:>14}  {}\n", "service", "availability_%", "source");
    for (const auto& svc : r.perService)
      out << fmt::format("  {:<24} {:>14}  {}\n", svc.name, percentCell(svc.availability, pp),
                         toString(svc.source));
    out << "  paperSum % (sum of per-service availabilities, can exceed 100%): "
        << percentCell(r.paperSum, pp) << "\n";
    out << "  mean % (paperSum / n): " << percentCell(r.mean, pp) << "\n";
    out << "  seriesProduct % (product of per-service availabilities): "
        << percentCell(r.seriesProduct, pp) << "\n";
  }
  return kExitOk;
}

// ----------------------------------------------------------------- monitor

int cmdMonitor(const Options& o, std::ostream& out, std::ostream& err) {
  const auto path = resolveInput(o.profilePath, "profiles", ".csv");
  const auto profile = parseOperationalProfile(readFile(path), o.horizon);
  (void)err;

  ordered_json j;
  if (o.json) {
    j["service"] = profile.serviceName();
    j["horizonHours"] = profile.horizonHours();
    j["events"] = profile.events().size();
  } else {
    if (!profile.serviceName().empty()) out << "service: " << profile.serviceName() << "\n";
    out << "horizon_hours: " << formatExact(profile.horizonHours()) << "\n";
    out << "events: " << profile.events().size() << "\n";
  }

  for (double t : o.at) {
    const int m = monitoringFunction(profile, t);
    if (o.json)
      j["monitoring"].push_back({{"t", t}, {"m", m}});
    else
      out << "M(" << formatExact(t) << "): " << m << "\n";
  }
  for (double c : o.window) {
    const double avg = averageAvailability(profile, c);
    if (o.json)
      j["windows"].push_back({{"c", c}, {"average", avg}});
    else
      out << "average_availability(" << formatExact(c) << "): " << formatSignificant(avg) << "\n";
  }
  const bool summary = o.limits || (o.at.empty() && o.window.empty());
  if (summary) {
    const auto lim = limitingAvailabilityEstimate(profile);
    if (o.json) {
      j["limitingEstimate"] = lim.estimate;
      if (o.limits) {
        j["windowSeries"] = ordered_json::array();
        for (const auto& w : lim.windows) j["windowSeries"].push_back({{"c", w.window}, {"average", w.average}});
      }
    } else {
      out << "limiting_estimate: " << formatSignificant(lim.estimate) << "\n";
      if (o.limits) {
        out << fmt::format("{:>16} {:>12}\n", "window_hours", "average");
        for (const auto& w : lim.windows)
          out << fmt::format("{:>16} {:>12}\n", formatSignificant(w.window), formatSignificant(w.average));
      }
    }
  }
  if (o.json) out << j.dump(2) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- simulate

int cmdWalk(const Options& o, std::ostream& out, std::ostream& err) {
  const auto path = resolveInput(o.modelPath, "models", ".json");
  const auto doc = parseModel(readFile(path), {o.lenient});
  printWarnings(doc.warnings, err);
  const auto est = walkAbsorption(doc.model, {o.trials, o.seed, o.maxSteps});
  if (o.json) {
    ordered_json j;
    j["estimate"] = est.pCorrectHat;
    j["standardError"] = est.standardError;
    j["censoredWalks"] = est.censoredWalks;
    j["trials"] = est.trials;
    j["seed"] = o.seed;
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  out << "estimate: " << formatSignificant(est.pCorrectHat) << "\n";
  out << "standard_error: " << formatSignificant(est.standardError) << "\n";
  out << "censored_walks: " << est.censoredWalks << "\n";
  out << "trials: " << est.trials << "\n";
  out << "seed: " << o.seed << "\n";
  return kExitOk;
}

int cmdRenewal(const Options& o, std::ostream& out) {
  const auto profile = simulateRenewal(o.mtbf, o.mttr, o.horizon.value_or(0.0), o.seed, o.serviceName);
  const auto csv = serialize(profile);
  if (o.output.empty()) {
    out << csv;
    return kExitOk;
  }
  std::ofstream file(o.output, std::ios::binary);
  if (!file || !(file << csv)) throw InputError("cannot write " + o.output);
  out << "wrote " << profile.events().size() << " events to " << o.output << "\n";
  return kExitOk;
}

int cmdEnsemble(const Options& o, std::ostream& out) {
  const auto est = ensembleAvailability(o.mtbf, o.mttr, o.t, o.trials, o.seed);
  if (o.json) {
    ordered_json j;
    j["t"] = o.t;
    j["availability"] = est.availability;
    j["standardError"] = est.standardError;
    j["trials"] = est.trials;
    j["seed"] = o.seed;
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  out << "t_hours: " << formatExact(o.t) << "\n";
  out << "ensemble_availability: " << formatSignificant(est.availability) << "\n";
  out << "standard_error: " << formatSignificant(est.standardError) << "\n";
  out << "trials: " << est.trials << "\n";
  out << "seed: " << o.seed << "\n";
  return kExitOk;
}

}  // namespace

int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Reliability and availability analysis for web-service workflows", "wsrel"};
  app.require_subcommand(1);

  auto* validate = app.add_subcommand("validate", "Check a model file against the FSM invariants");
  validate->add_option("model", o.modelPath, "Model file or bundled model name")->required();
  validate->add_flag("--lenient", o.lenient, "Warn on unknown fields instead of failing");

  auto* solve = app.add_subcommand("solve", "Absorption probabilities into C and F");
  solve->add_option("model", o.modelPath, "Model file or bundled model name")->required();
  solve->add_flag("--iterative", o.iterative, "Use fixed-point iteration");
  solve->add_option("--tol", o.tol, "Iteration tolerance (max norm)")->check(CLI::PositiveNumber);
  solve->add_option("--max-iter", o.maxIter, "Iteration limit");
  solve->add_flag("--json", o.json, "Machine-readable output");
  solve->add_flag("--lenient", o.lenient, "Warn on unknown fields instead of failing");

  auto* avail = app.add_subcommand("avail", "Closed-form availability and reliability formulas");
  std::map<std::string, CLI::Option*> availOpts;
  availOpts["mtbf"] = avail->add_option("--mtbf", o.mtbf, "Mean time between failures (hours)");
  availOpts["mttr"] = avail->add_option("--mttr", o.mttr, "Mean time to recovery (hours)");
  availOpts["up"] = avail->add_option("--up", o.up, "Expected uptime (hours)");
  availOpts["down"] = avail->add_option("--down", o.down, "Expected downtime (hours)");
  availOpts["tm"] = avail->add_option("--tm", o.tm, "Mean downtime per failure (hours)");
  availOpts["lambda"] = avail->add_option("--lambda", o.lambda, "Failure intensity (per hour)");
  availOpts["a"] = avail->add_option("--a", o.a, "Availability in (0, 1]");
  availOpts["r"] = avail->add_option("--r", o.r, "Reliability in (0, 1]");
  availOpts["t"] = avail->add_option("--t", o.t, "Exposure time");
  avail->add_flag("--reliability", o.reliabilityFlag, "Request R = exp(-lambda t) (with --lambda/--t)");
  avail->add_flag("--json", o.json, "Machine-readable output");

  auto* compose = app.add_subcommand("compose", "Availability over service composition sets");
  compose->add_option("set", o.setPath, "Composition file or bundled name")->required();
  compose->add_flag("--paper-precision", o.paperPrecision, "Percentages truncated to 4 decimals");
  compose->add_flag("--json", o.json, "Machine-readable output");
  compose->add_flag("--lenient", o.lenient, "Warn on unknown fields instead of failing");

  auto* monitor = app.add_subcommand("monitor", "Availability from an operational profile log");
  monitor->add_option("profile", o.profilePath, "Operational profile CSV")->required();
  monitor->add_option("--horizon", o.horizon, "Observation horizon (hours); overrides the file");
  monitor->add_option("--at", o.at, "Evaluate M(t) at these times");
  monitor->add_option("--window", o.window, "Average availability over [0, c]");
  monitor->add_flag("--limits", o.limits, "Window-convergence series toward the limiting availability");
  monitor->add_flag("--json", o.json, "Machine-readable output");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo oracles");
  simulate->require_subcommand(1);
  auto* walk = simulate->add_subcommand("walk", "Random walks on a model");
  walk->add_option("model", o.modelPath, "Model file or bundled model name")->required();
  walk->add_option("--trials", o.trials, "Number of walks")->check(CLI::PositiveNumber);
  walk->add_option("--seed", o.seed, "Random seed");
  walk->add_option("--max-steps", o.maxSteps, "Walk cutoff")->check(CLI::PositiveNumber);
  walk->add_flag("--json", o.json, "Machine-readable output");
  walk->add_flag("--lenient", o.lenient, "Warn on unknown fields instead of failing");

  auto* renewal = simulate->add_subcommand("renewal", "Alternating renewal log as profile CSV");
  renewal->add_option("--mtbf", o.mtbf, "Mean up time (hours)")->required();
  renewal->add_option("--mttr", o.mttr, "Mean down time (hours)")->required();
  renewal->add_option("--horizon", o.horizon, "Horizon (hours)")->required();
  renewal->add_option("--seed", o.seed, "Random seed");
  renewal->add_option("--service", o.serviceName, "Service name recorded in the file");
  renewal->add_option("-o,--output", o.output, "Output path (default: stdout)");

  auto* ensemble = simulate->add_subcommand("ensemble", "Pr[M(t) = 1] over independent trajectories");
  ensemble->add_option("--mtbf", o.mtbf, "Mean up time (hours)")->required();
  ensemble->add_option("--mttr", o.mttr, "Mean down time (hours)")->required();
  ensemble->add_option("--t", o.t, "Time (hours)")->required();
  ensemble->add_option("--trials", o.trials, "Number of trajectories")->check(CLI::PositiveNumber);
  ensemble->add_option("--seed", o.seed, "Random seed");
  ensemble->add_flag("--json", o.json, "Machine-readable output");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*validate) return cmdValidate(o, out, err);
    if (*solve) return cmdSolve(o, out, err);
    if (*avail) {
      std::set<std::string> given;
      for (const auto& [name, opt] : availOpts)
        if (opt->count() > 0) given.insert(name);
      return cmdAvail(o, given, out, err);
    }
    if (*compose) return cmdCompose(o, out, err);
    if (*monitor) return cmdMonitor(o, out, err);
    if (*walk) return cmdWalk(o, out, err);
    if (*renewal) return cmdRenewal(o, out);
    if (*ensemble) return cmdEnsemble(o, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace wsrel
