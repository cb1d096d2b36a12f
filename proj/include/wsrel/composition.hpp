#pragma once

#include <map>
#include <string>
#include <vector>

#include "wsrel/availability.hpp"
#include "wsrel/monitor.hpp"

namespace wsrel {

/// WS_Comp = {S_1, ..., S_n}: services taking part in one composite service.
struct CompositionSet {
  std::string name;
  std::vector<ServiceProfile> services;

  bool operator==(const CompositionSet&) const = default;
};

/// Throws DomainError on an empty set, a duplicate service name or an
/// invalid service profile.
void checkCompositionSet(const CompositionSet& set);

enum class AvailabilitySource { MtbfMttr, OperationalProfile };

const char* toString(AvailabilitySource source);

struct ServiceAvailability {
  std::string name;
  double availability = 0.0;
  AvailabilitySource source = AvailabilitySource::MtbfMttr;
};

struct CompositionReport {
  std::string setName;
  std::vector<ServiceAvailability> perService;  // in set order
  double paperSum = 0.0;                        // sum of per-service availabilities; may exceed 1
  double mean = 0.0;                            // paperSum / n
  double seriesProduct = 0.0;                   // product of per-service availabilities
};

/// Per-service availability and the three aggregates. A service with an
/// entry in `profiles` (keyed by service name) takes its availability from
/// the profile's uptime/downtime over the horizon instead of MTBF/MTTR.
///
/// Aggregates are accumulated over the availabilities in ascending order,
/// so they do not depend on the order of the service list.
CompositionReport evaluateComposition(const CompositionSet& set,
                                      const std::map<std::string, OperationalProfile>& profiles = {});

}  // namespace wsrel
