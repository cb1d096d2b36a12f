#pragma once

#include <cstdint>
#include <string>

#include "wsrel/fsm_model.hpp"
#include "wsrel/monitor.hpp"

namespace wsrel {

struct SimConfig {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  std::uint64_t maxSteps = 10000;  // walk cutoff
};

struct WalkEstimate {
  double pCorrectHat = 0.0;
  double standardError = 0.0;  // sqrt(p(1-p)/trials)
  std::uint64_t censoredWalks = 0;
  std::uint64_t correctWalks = 0;
  std::uint64_t trials = 0;
};

/// Monte Carlo estimate of pCorrect(start): `trials` random walks, each
/// stopped at C, F or after maxSteps transitions. Censored walks count as
/// faults. Walk k draws from substream (seed, k) only.
WalkEstimate walkAbsorption(const ReliabilityFsm& model, const SimConfig& cfg);

/// Alternating renewal log: Up at 0, exponential Up periods with mean
/// `mtbfHours`, exponential Down periods with mean `mttrHours`, events
/// strictly before the horizon.
OperationalProfile simulateRenewal(double mtbfHours, double mttrHours, double horizonHours,
                                   std::uint64_t seed, std::string serviceName = "simulated");

struct EnsembleEstimate {
  double availability = 0.0;  // fraction of trajectories Up at t
  double standardError = 0.0;
  std::uint64_t trials = 0;
};

/// Pr[M(t) = 1] estimated over independent renewal trajectories.
EnsembleEstimate ensembleAvailability(double mtbfHours, double mttrHours, double t,
                                      std::uint64_t trials, std::uint64_t seed);

}  // namespace wsrel
