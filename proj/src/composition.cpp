#include "wsrel/composition.hpp"

#include <algorithm>
#include <set>

#include "wsrel/errors.hpp"

namespace wsrel {

void checkCompositionSet(const CompositionSet& set) {
  if (set.services.empty())
    throw DomainError("composition set \"" + set.name + "\" has no services");
  std::set<std::string> seen;
  for (const auto& s : set.services) {
    checkServiceProfile(s);
    if (!seen.insert(s.name).second)
      throw DomainError("composition set \"" + set.name + "\" lists service \"" + s.name + "\" twice");
  }
}

const char* toString(AvailabilitySource source) {
  switch (source) {
    case AvailabilitySource::MtbfMttr: return "mtbf_mttr";
    case AvailabilitySource::OperationalProfile: return "operational_profile";
  }
  return "unknown";
}

CompositionReport evaluateComposition(const CompositionSet& set,
                                      const std::map<std::string, OperationalProfile>& profiles) {
  checkCompositionSet(set);
  CompositionReport report;
  report.setName = set.name;
  for (const auto& service : set.services) {
    ServiceAvailability entry{service.name, 0.0, AvailabilitySource::MtbfMttr};
    if (auto it = profiles.find(service.name); it != profiles.end()) {
      const auto& profile = it->second;
      const double up = uptimeBetween(profile, 0.0, profile.horizonHours());
      const double down = std::max(0.0, profile.horizonHours() - up);
      entry.availability = availabilityFromUptimeExpectations(up, down);
      entry.source = AvailabilitySource::OperationalProfile;
    } else {
      entry.availability = availabilityFromMtbfMttr(service);
    }
    report.perService.push_back(entry);
  }

  std::vector<double> values;
  for (const auto& s : report.perService) values.push_back(s.availability);
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  double product = 1.0;
  for (double v : values) {
    sum += v;
    product *= v;
  }
  report.paperSum = sum;
  report.mean = sum / static_cast<double>(values.size());
  report.seriesProduct = product;
  return report;
}

}  // namespace wsrel
