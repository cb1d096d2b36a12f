#include "wsrel/monitor.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "wsrel/errors.hpp"

namespace wsrel {

namespace {

// Cap on the number of halvings in the window series.
constexpr int kMaxHalvings = 60;
constexpr int kSingleEventHalvings = 10;

}  // namespace

std::optional<ProfileViolation> checkProfile(const std::vector<StateEvent>& events, double horizonHours) {
  if (events.empty() || events.front().timestampHours != 0.0)
    return ProfileViolation{"initial-state", 0, "profile must declare its initial state at timestamp 0"};
  for (std::size_t i = 1; i < events.size(); ++i) {
    const auto& prev = events[i - 1];
    const auto& cur = events[i];
    if (!(cur.timestampHours > prev.timestampHours))
      return ProfileViolation{"non-increasing-timestamp", i,
                              fmt::format("timestamp {} does not follow {}", cur.timestampHours,
                                          prev.timestampHours)};
    if (cur.state == prev.state)
      return ProfileViolation{"non-alternating-state", i,
                              "consecutive events must alternate between up and down"};
  }
  if (!(horizonHours > 0.0) || !std::isfinite(horizonHours))
    return ProfileViolation{"horizon", events.size(), "horizon must be a positive number of hours"};
  if (horizonHours < events.back().timestampHours)
    return ProfileViolation{"horizon", events.size(),
                            fmt::format("horizon {} precedes last event at {}", horizonHours,
                                        events.back().timestampHours)};
  return std::nullopt;
}

OperationalProfile::OperationalProfile(std::string serviceName, std::vector<StateEvent> events,
                                       double horizonHours)
    : serviceName_(std::move(serviceName)), events_(std::move(events)), horizon_(horizonHours) {
  if (auto breach = checkProfile(events_, horizon_))
    throw DomainError("[" + breach->rule + "] " + breach->message);
}

int monitoringFunction(const OperationalProfile& profile, double t) {
  if (!(t >= 0.0 && t <= profile.horizonHours()))
    throw DomainError(fmt::format("time {} outside [0, {}]", t, profile.horizonHours()));
  const auto& events = profile.events();
  auto it = std::upper_bound(events.begin(), events.end(), t,
                             [](double time, const StateEvent& e) { return time < e.timestampHours; });
  return std::prev(it)->state == ServiceState::Up ? 1 : 0;
}

double uptimeBetween(const OperationalProfile& profile, double from, double to) {
  if (!(from >= 0.0 && from <= to && to <= profile.horizonHours()))
    throw DomainError(fmt::format("interval [{}, {}] outside [0, {}]", from, to, profile.horizonHours()));
  const auto& events = profile.events();
  double up = 0.0;
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].state != ServiceState::Up) continue;
    const double begin = events[i].timestampHours;
    const double end = i + 1 < events.size() ? events[i + 1].timestampHours : profile.horizonHours();
    if (begin >= to) break;
    const double lo = std::max(begin, from);
    const double hi = std::min(end, to);
    if (hi > lo) up += hi - lo;
  }
  return up;
}

double averageAvailability(const OperationalProfile& profile, double window) {
  if (!(window > 0.0 && window <= profile.horizonHours()))
    throw DomainError(fmt::format("window {} outside (0, {}]", window, profile.horizonHours()));
  return std::clamp(uptimeBetween(profile, 0.0, window) / window, 0.0, 1.0);
}

LimitingEstimate limitingAvailabilityEstimate(const OperationalProfile& profile) {
  const double horizon = profile.horizonHours();
  const auto& events = profile.events();
  const double smallest = events.size() > 1 ? events[1].timestampHours
                                            : horizon / std::ldexp(1.0, kSingleEventHalvings);

  LimitingEstimate out;
  out.estimate = averageAvailability(profile, horizon);
  int halvings = 0;
  while (halvings < kMaxHalvings && horizon / std::ldexp(1.0, halvings + 1) >= smallest) ++halvings;
  for (int k = halvings; k >= 0; --k) {
    const double c = horizon / std::ldexp(1.0, k);
    out.windows.push_back({c, averageAvailability(profile, c)});
  }
  return out;
}

}  // namespace wsrel
