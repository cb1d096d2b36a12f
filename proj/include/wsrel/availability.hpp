#pragma once

#include <cmath>
#include <string>

#include "wsrel/errors.hpp"

namespace wsrel {

/// Hours per year used for MTBF conversions (365 days, no leap years).
inline constexpr double kHoursPerYear = 365.0 * 24.0;

struct ServiceProfile {
  std::string name;
  double mtbfHours = 0.0;  // > 0
  double mttrHours = 0.0;  // >= 0

  bool operator==(const ServiceProfile&) const = default;
};

/// Failures per unit time; always >= 0.
template <typename Scalar = double>
class FailureIntensity {
 public:
  explicit FailureIntensity(Scalar lambda) : lambda_(lambda) {
    if (!(lambda >= Scalar(0))) throw DomainError("failure intensity must be >= 0");
  }
  Scalar value() const noexcept { return lambda_; }

 private:
  Scalar lambda_;
};

/// Throws DomainError unless mtbf > 0 and mttr >= 0.
inline void checkServiceProfile(const ServiceProfile& p) {
  if (!(p.mtbfHours > 0.0) || !std::isfinite(p.mtbfHours))
    throw DomainError("service \"" + p.name + "\": MTBF must be a positive number of hours");
  if (!(p.mttrHours >= 0.0) || !std::isfinite(p.mttrHours))
    throw DomainError("service \"" + p.name + "\": MTTR must be a non-negative number of hours");
}

/// A = 1 / (1 + t_m * lambda_F), with t_m the mean downtime per failure.
template <typename Scalar>
Scalar availabilityFromDowntime(Scalar meanDowntime, Scalar lambdaF) {
  if (!(meanDowntime > Scalar(0))) throw DomainError("mean downtime per failure must be > 0");
  if (!(lambdaF >= Scalar(0))) throw DomainError("failure intensity must be >= 0");
  return Scalar(1) / (Scalar(1) + meanDowntime * lambdaF);
}

/// lambda_F = (1 - A) / (t_m * A); inverse of availabilityFromDowntime.
template <typename Scalar>
Scalar failureIntensityFromAvailability(Scalar meanDowntime, Scalar availability) {
  if (!(meanDowntime > Scalar(0))) throw DomainError("mean downtime per failure must be > 0");
  if (!(availability > Scalar(0) && availability <= Scalar(1)))
    throw DomainError("availability must lie in (0, 1]");
  return (Scalar(1) - availability) / (meanDowntime * availability);
}

/// R = exp(-lambda * t).
template <typename Scalar>
Scalar reliabilityFromIntensity(Scalar lambda, Scalar t) {
  if (!(lambda >= Scalar(0))) throw DomainError("failure intensity must be >= 0");
  if (!(t >= Scalar(0))) throw DomainError("exposure time must be >= 0");
  using std::exp;
  return exp(-lambda * t);
}

/// lambda = -ln(R) / t; inverse of reliabilityFromIntensity.
template <typename Scalar>
Scalar intensityFromReliability(Scalar reliability, Scalar t) {
  if (!(reliability > Scalar(0) && reliability <= Scalar(1)))
    throw DomainError("reliability must lie in (0, 1]");
  if (!(t > Scalar(0))) throw DomainError("exposure time must be > 0");
  using std::log;
  // -log(1) is -0.0; report a clean zero.
  return reliability == Scalar(1) ? Scalar(0) : -log(reliability) / t;
}

/// MTBF / (MTBF + MTTR).
inline double availabilityFromMtbfMttr(const ServiceProfile& p) {
  checkServiceProfile(p);
  return p.mtbfHours / (p.mtbfHours + p.mttrHours);
}

/// E[up] / (E[up] + E[down]).
template <typename Scalar>
Scalar availabilityFromUptimeExpectations(Scalar upHours, Scalar downHours) {
  if (!(upHours >= Scalar(0)) || !(downHours >= Scalar(0)))
    throw DomainError("uptime and downtime must be >= 0");
  if (!(upHours + downHours > Scalar(0))) throw DomainError("uptime + downtime must be > 0");
  return upHours / (upHours + downHours);
}

/// Extension bridging the two formula families: takes the failure
/// intensity of an exponential lifetime as lambda_F = 1 / MTBF.
inline double failureIntensityFromMtbf(double mtbfHours) {
  if (!(mtbfHours > 0.0)) throw DomainError("MTBF must be > 0");
  return 1.0 / mtbfHours;
}

inline double yearsToHours(double years) { return years * kHoursPerYear; }

}  // namespace wsrel
