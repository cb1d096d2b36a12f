#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace wsrel {

enum class ServiceState { Down = 0, Up = 1 };

struct StateEvent {
  double timestampHours = 0.0;
  ServiceState state = ServiceState::Up;

  bool operator==(const StateEvent&) const = default;
};

struct ProfileViolation {
  std::string rule;
  std::size_t eventIndex = 0;  // offending event; events.size() for horizon breaches
  std::string message;
};

/// First breach of the operational-profile invariants, if any: first event
/// at t = 0, strictly increasing timestamps, alternating states, and
/// 0 < horizon with horizon >= last timestamp.
std::optional<ProfileViolation> checkProfile(const std::vector<StateEvent>& events, double horizonHours);

/// Up/down event log of one service over [0, horizon]. A state change takes
/// effect at its timestamp, so the state is constant on [t_i, t_{i+1}).
class OperationalProfile {
 public:
  /// Throws DomainError when checkProfile reports a breach.
  OperationalProfile(std::string serviceName, std::vector<StateEvent> events, double horizonHours);

  const std::string& serviceName() const noexcept { return serviceName_; }
  const std::vector<StateEvent>& events() const noexcept { return events_; }
  double horizonHours() const noexcept { return horizon_; }

  bool operator==(const OperationalProfile&) const = default;

 private:
  std::string serviceName_;
  std::vector<StateEvent> events_;
  double horizon_ = 0.0;
};

/// M(t): 1 when the service is up at t. Throws OutOfRange-style
/// DomainError for t outside [0, horizon].
int monitoringFunction(const OperationalProfile& profile, double t);

/// Time spent Up within [from, to], 0 <= from <= to <= horizon.
double uptimeBetween(const OperationalProfile& profile, double from, double to);

/// (1/c) * integral of M over [0, c], integrated exactly over the event
/// intervals. Requires 0 < c <= horizon.
double averageAvailability(const OperationalProfile& profile, double window);

struct WindowAverage {
  double window = 0.0;
  double average = 0.0;
};

struct LimitingEstimate {
  double estimate = 0.0;               // average over the whole horizon
  std::vector<WindowAverage> windows;  // increasing window length, last is the horizon
};

/// Window averages at horizon / 2^k, from the first event gap (or
/// horizon / 2^10 for a single-event log) up to the horizon.
LimitingEstimate limitingAvailabilityEstimate(const OperationalProfile& profile);

}  // namespace wsrel
