#include "wsrel/simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <thread>
#include <vector>

#include "wsrel/errors.hpp"
#include "wsrel/rng.hpp"

namespace wsrel {

namespace {

struct Transition {
  double cumulative;
  std::size_t target;
};

// Histogram of `trial(k)` outcomes (each in [0, Outcomes)) over k < trials,
// split across threads by contiguous index ranges. Integer sums make the
// result independent of scheduling.
template <std::size_t Outcomes>
std::array<std::uint64_t, Outcomes> tallyTrials(std::uint64_t trials,
                                                const std::function<std::size_t(std::uint64_t)>& trial) {
  const std::uint64_t workers = std::clamp<std::uint64_t>(std::thread::hardware_concurrency(), 1,
                                                          std::max<std::uint64_t>(1, trials / 1024));
  std::vector<std::array<std::uint64_t, Outcomes>> partial(workers);
  auto run = [&](std::uint64_t w) {
    std::array<std::uint64_t, Outcomes> counts{};
    const std::uint64_t lo = trials * w / workers;
    const std::uint64_t hi = trials * (w + 1) / workers;
    for (std::uint64_t k = lo; k < hi; ++k) ++counts[trial(k)];
    partial[w] = counts;
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::uint64_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  std::array<std::uint64_t, Outcomes> total{};
  for (const auto& counts : partial)
    for (std::size_t i = 0; i < Outcomes; ++i) total[i] += counts[i];
  return total;
}

double binomialError(double p, std::uint64_t trials) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

void checkRenewalArgs(double mtbfHours, double mttrHours) {
  if (!(mtbfHours > 0.0)) throw DomainError("MTBF must be > 0");
  if (!(mttrHours > 0.0)) throw DomainError("MTTR must be > 0");
}

}  // namespace

WalkEstimate walkAbsorption(const ReliabilityFsm& model, const SimConfig& cfg) {
  requireValid(model);
  if (cfg.trials < 1) throw DomainError("trials must be >= 1");
  if (cfg.maxSteps < 1) throw DomainError("maxSteps must be >= 1");

  const auto& nodes = model.nodes();
  const std::size_t n = nodes.size();
  const std::size_t correct = n;
  const std::size_t fault = n + 1;
  auto indexOf = [&](const NodeId& id) -> std::size_t {
    if (id == kCorrect) return correct;
    if (id == kFault) return fault;
    return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), id) - nodes.begin());
  };

  std::vector<std::vector<Transition>> table(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (const auto& e : model.outgoing(nodes[i])) {
      if (!(e.probability > 0.0)) continue;
      acc += e.probability;
      table[i].push_back({acc, indexOf(e.to)});
    }
  }
  const std::size_t startIndex = indexOf(model.start());

  enum Outcome : std::size_t { kEndedFault, kEndedCorrect, kCensored };
  auto walk = [&](std::uint64_t k) -> std::size_t {
    CounterRng rng(cfg.seed, k);
    std::size_t at = startIndex;
    for (std::uint64_t step = 0; step < cfg.maxSteps; ++step) {
      const double u = rng.uniform();
      const auto& row = table[at];
      auto it = std::upper_bound(row.begin(), row.end(), u,
                                 [](double x, const Transition& t) { return x < t.cumulative; });
      at = it == row.end() ? row.back().target : it->target;
      if (at == correct) return kEndedCorrect;
      if (at == fault) return kEndedFault;
    }
    return kCensored;
  };
  const auto tally = tallyTrials<3>(cfg.trials, walk);
  const std::uint64_t hits = tally[kEndedCorrect];

  WalkEstimate est;
  est.trials = cfg.trials;
  est.correctWalks = hits;
  est.censoredWalks = tally[kCensored];
  est.pCorrectHat = static_cast<double>(hits) / static_cast<double>(cfg.trials);
  est.standardError = binomialError(est.pCorrectHat, cfg.trials);
  return est;
}

OperationalProfile simulateRenewal(double mtbfHours, double mttrHours, double horizonHours,
                                   std::uint64_t seed, std::string serviceName) {
  checkRenewalArgs(mtbfHours, mttrHours);
  if (!(horizonHours > 0.0)) throw DomainError("horizon must be > 0");

  CounterRng rng(seed, 0);
  std::vector<StateEvent> events{{0.0, ServiceState::Up}};
  double t = 0.0;
  ServiceState state = ServiceState::Up;
  for (;;) {
    double next = t + rng.exponential(state == ServiceState::Up ? mtbfHours : mttrHours);
    if (!(next > t)) next = std::nextafter(t, horizonHours);
    if (next >= horizonHours) break;
    state = state == ServiceState::Up ? ServiceState::Down : ServiceState::Up;
    events.push_back({next, state});
    t = next;
  }
  return OperationalProfile(std::move(serviceName), std::move(events), horizonHours);
}

EnsembleEstimate ensembleAvailability(double mtbfHours, double mttrHours, double t,
                                      std::uint64_t trials, std::uint64_t seed) {
  checkRenewalArgs(mtbfHours, mttrHours);
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("time must be >= 0");
  if (trials < 1) throw DomainError("trials must be >= 1");

  auto stateAt = [&](std::uint64_t k) -> std::size_t {
    CounterRng rng(seed, k);
    bool up = true;
    double time = 0.0;
    for (;;) {
      const double next = time + rng.exponential(up ? mtbfHours : mttrHours);
      if (next > t) return up ? 1 : 0;
      time = next;
      up = !up;
    }
  };
  const std::uint64_t upCount = tallyTrials<2>(trials, stateAt)[1];

  EnsembleEstimate est;
  est.trials = trials;
  est.availability = static_cast<double>(upCount) / static_cast<double>(trials);
  est.standardError = binomialError(est.availability, trials);
  return est;
}

}  // namespace wsrel
