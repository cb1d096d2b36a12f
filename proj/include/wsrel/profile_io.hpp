#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wsrel/composition.hpp"
#include "wsrel/fsm_model.hpp"
#include "wsrel/monitor.hpp"

namespace wsrel {

/// The only document format version this build reads and writes.
inline constexpr std::string_view kFormatVersion = "1.0";

struct ParseOptions {
  bool lenient = false;  // unknown fields become warnings instead of errors
};

struct ModelDocument {
  std::string formatVersion{kFormatVersion};
  ReliabilityFsm model;
  std::map<std::string, std::string> metadata;
  std::vector<std::string> warnings;  // populated in lenient mode; not serialized

  bool operator==(const ModelDocument& other) const {
    return formatVersion == other.formatVersion && model == other.model && metadata == other.metadata;
  }
};

struct CompositionDocument {
  std::string formatVersion{kFormatVersion};
  std::vector<CompositionSet> sets;
  // (set name, service name) -> operational profile path, relative to the
  // composition file.
  std::map<std::pair<std::string, std::string>, std::string> operationalProfiles;
  std::vector<std::string> warnings;

  bool operator==(const CompositionDocument& other) const {
    return formatVersion == other.formatVersion && sets == other.sets &&
           operationalProfiles == other.operationalProfiles;
  }
};

/// Model file -> document. The embedded model always passes `validate`:
/// syntax and schema problems throw ParseError, invariant breaches throw
/// ValidationError.
ModelDocument parseModel(std::string_view text, const ParseOptions& options = {});

CompositionDocument parseCompositionSet(std::string_view text, const ParseOptions& options = {});

/// CSV log with header `timestamp_hours,state`. The horizon comes from
/// `horizonOverride` when given, else from a `# horizon=<hours>` comment.
/// A `# service=<name>` comment names the service.
OperationalProfile parseOperationalProfile(std::string_view text,
                                           std::optional<double> horizonOverride = std::nullopt);

std::string serialize(const ModelDocument& doc);
std::string serialize(const CompositionDocument& doc);
std::string serialize(const OperationalProfile& profile);

/// Shortest decimal text that parses back to exactly `value`.
std::string formatExact(double value);

}  // namespace wsrel
