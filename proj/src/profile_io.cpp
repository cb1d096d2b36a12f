#include "wsrel/profile_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "wsrel/errors.hpp"

namespace wsrel {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string lineColumn(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 0;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 0;
    } else {
      ++column;
    }
  }
  return fmt::format("line {}, column {}", line, column);
}

json parseJson(std::string_view text) {
  if (std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); }))
    throw ParseError("syntax", "position 0", "document is empty");
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    throw ParseError("syntax", lineColumn(text, byte), e.what());
  }
}

// Schema-checking view of one JSON object, tracking its JSON pointer.
class ObjectReader {
 public:
  ObjectReader(const json& value, std::string pointer, const ParseOptions& options,
               std::vector<std::string>& warnings)
      : value_(value), pointer_(std::move(pointer)), options_(options), warnings_(warnings) {
    if (!value_.is_object()) throw ParseError("type", where(), "expected an object");
  }

  std::string where(std::string_view key = {}) const {
    std::string p = pointer_.empty() ? "" : pointer_;
    if (!key.empty()) p += "/" + std::string(key);
    return p.empty() ? "/" : p;
  }

  const json* optional(const std::string& key) {
    known_.insert(key);
    auto it = value_.find(key);
    return it == value_.end() ? nullptr : &*it;
  }

  const json& required(const std::string& key) {
    const json* v = optional(key);
    if (v == nullptr) throw ParseError("missing-field", where(), "required field \"" + key + "\" is missing");
    return *v;
  }

  std::string string(const std::string& key) {
    const json& v = required(key);
    if (!v.is_string()) throw ParseError("type", where(key), "\"" + key + "\" must be a string");
    return v.get<std::string>();
  }

  double number(const std::string& key) {
    const json& v = required(key);
    if (!v.is_number()) throw ParseError("type", where(key), "\"" + key + "\" must be a number");
    return v.get<double>();
  }

  const json& array(const std::string& key) {
    const json& v = required(key);
    if (!v.is_array()) throw ParseError("type", where(key), "\"" + key + "\" must be an array");
    return v;
  }

  // Reject (or, leniently, warn about) fields never asked for.
  void finish() {
    for (auto it = value_.begin(); it != value_.end(); ++it) {
      if (known_.contains(it.key())) continue;
      const auto msg = "unknown field \"" + it.key() + "\"";
      if (!options_.lenient) throw ParseError("unknown-field", where(it.key()), msg);
      warnings_.push_back(where(it.key()) + ": " + msg);
    }
  }

 private:
  const json& value_;
  std::string pointer_;
  const ParseOptions& options_;
  std::vector<std::string>& warnings_;
  std::set<std::string> known_;
};

void checkVersion(ObjectReader& root) {
  const auto version = root.string("formatVersion");
  if (version != kFormatVersion)
    throw ParseError("format-version", root.where("formatVersion"),
                     fmt::format("unsupported formatVersion \"{}\" (expected \"{}\")", version, kFormatVersion));
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::optional<double> parseReal(std::string_view s) {
  double value = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) return std::nullopt;
  return value;
}

}  // namespace

std::string formatExact(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

ModelDocument parseModel(std::string_view text, const ParseOptions& options) {
  const json root = parseJson(text);
  ModelDocument doc;
  ObjectReader reader(root, "", options, doc.warnings);
  checkVersion(reader);
  doc.formatVersion = std::string(kFormatVersion);

  std::vector<NodeId> nodes;
  const json& nodeList = reader.array("nodes");
  for (std::size_t i = 0; i < nodeList.size(); ++i) {
    if (!nodeList[i].is_string())
      throw ParseError("type", fmt::format("/nodes/{}", i), "node labels must be strings");
    nodes.push_back(NodeId{nodeList[i].get<std::string>()});
  }

  std::vector<Edge> edges;
  const json& edgeList = reader.array("edges");
  for (std::size_t i = 0; i < edgeList.size(); ++i) {
    ObjectReader er(edgeList[i], fmt::format("/edges/{}", i), options, doc.warnings);
    Edge e{NodeId{er.string("from")}, NodeId{er.string("to")}, er.number("probability")};
    if (!(e.probability >= 0.0 && e.probability <= 1.0))
      throw ParseError("probability-range", er.where("probability"),
                       fmt::format("edge {}->{} has probability {} outside [0,1]", e.from.name, e.to.name,
                                   e.probability));
    er.finish();
    edges.push_back(std::move(e));
  }

  NodeId start{reader.string("start")};

  if (const json* meta = reader.optional("metadata")) {
    if (!meta->is_object()) throw ParseError("type", "/metadata", "metadata must be an object");
    for (auto it = meta->begin(); it != meta->end(); ++it) {
      if (!it->is_string())
        throw ParseError("type", "/metadata/" + it.key(), "metadata values must be strings");
      doc.metadata.emplace(it.key(), it->get<std::string>());
    }
  }
  reader.finish();

  doc.model = ReliabilityFsm(std::move(nodes), std::move(edges), std::move(start));
  requireValid(doc.model);
  return doc;
}

CompositionDocument parseCompositionSet(std::string_view text, const ParseOptions& options) {
  const json root = parseJson(text);
  CompositionDocument doc;
  ObjectReader reader(root, "", options, doc.warnings);
  checkVersion(reader);
  doc.formatVersion = std::string(kFormatVersion);

  const json& sets = reader.array("compositionSets");
  if (sets.empty()) throw ParseError("empty-document", "/compositionSets", "no composition sets");
  std::set<std::string> setNames;
  for (std::size_t s = 0; s < sets.size(); ++s) {
    ObjectReader sr(sets[s], fmt::format("/compositionSets/{}", s), options, doc.warnings);
    CompositionSet set;
    set.name = sr.string("name");
    if (!setNames.insert(set.name).second)
      throw ParseError("duplicate-set", sr.where("name"), "duplicate composition set \"" + set.name + "\"");

    const json& services = sr.array("services");
    if (services.empty())
      throw ParseError("empty-set", sr.where("services"), "composition set \"" + set.name + "\" has no services");
    std::set<std::string> serviceNames;
    for (std::size_t i = 0; i < services.size(); ++i) {
      ObjectReader row(services[i], sr.where("services") + fmt::format("/{}", i), options, doc.warnings);
      ServiceProfile p;
      p.name = row.string("name");
      p.mtbfHours = row.number("mtbfHours");
      p.mttrHours = row.number("mttrHours");
      if (!(p.mtbfHours > 0.0))
        throw ParseError("mtbf-range", row.where("mtbfHours"),
                         fmt::format("service \"{}\": MTBF {} must be > 0", p.name, p.mtbfHours));
      if (!(p.mttrHours >= 0.0))
        throw ParseError("mttr-range", row.where("mttrHours"),
                         fmt::format("service \"{}\": MTTR {} must be >= 0", p.name, p.mttrHours));
      if (!serviceNames.insert(p.name).second)
        throw ParseError("duplicate-service", row.where("name"),
                         "service \"" + p.name + "\" appears twice in set \"" + set.name + "\"");
      if (const json* ref = row.optional("operationalProfile")) {
        if (!ref->is_string())
          throw ParseError("type", row.where("operationalProfile"), "operationalProfile must be a path string");
        doc.operationalProfiles[{set.name, p.name}] = ref->get<std::string>();
      }
      row.finish();
      set.services.push_back(std::move(p));
    }
    sr.finish();
    doc.sets.push_back(std::move(set));
  }
  reader.finish();
  return doc;
}

OperationalProfile parseOperationalProfile(std::string_view text, std::optional<double> horizonOverride) {
  std::vector<StateEvent> events;
  std::vector<std::size_t> eventLines;
  std::optional<double> horizonComment;
  std::string service;
  bool headerSeen = false;

  std::size_t lineNo = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    const std::string line = trim(text.substr(pos, end - pos));
    ++lineNo;
    pos = end + 1;
    const auto where = fmt::format("line {}", lineNo);

    if (line.empty()) continue;
    if (line.front() == '#') {
      const std::string body = trim(std::string_view(line).substr(1));
      const auto eq = body.find('=');
      if (eq == std::string::npos) continue;
      const auto key = lower(trim(std::string_view(body).substr(0, eq)));
      const auto value = trim(std::string_view(body).substr(eq + 1));
      if (key == "horizon") {
        auto h = parseReal(value);
        if (!h) throw ParseError("number", where, "horizon \"" + value + "\" is not a number");
        horizonComment = *h;
      } else if (key == "service") {
        service = value;
      }
      continue;
    }
    if (!headerSeen) {
      if (lower(line) != "timestamp_hours,state")
        throw ParseError("header", where, "expected header \"timestamp_hours,state\"");
      headerSeen = true;
      continue;
    }

    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
      throw ParseError("columns", where, "expected two comma-separated columns");
    const auto stamp = trim(std::string_view(line).substr(0, comma));
    const auto state = lower(trim(std::string_view(line).substr(comma + 1)));
    auto t = parseReal(stamp);
    if (!t) throw ParseError("number", where, "timestamp \"" + stamp + "\" is not a number");
    if (*t < 0.0) throw ParseError("negative-timestamp", where, "timestamps must be >= 0");
    StateEvent e{*t, ServiceState::Up};
    if (state == "up")
      e.state = ServiceState::Up;
    else if (state == "down")
      e.state = ServiceState::Down;
    else
      throw ParseError("state", where, "state \"" + state + "\" is neither up nor down");
    events.push_back(e);
    eventLines.push_back(lineNo);
  }

  if (!headerSeen) throw ParseError("header", "line 1", "missing header \"timestamp_hours,state\"");
  const auto horizon = horizonOverride ? horizonOverride : horizonComment;
  if (!horizon)
    throw ParseError("missing-horizon", fmt::format("line {}", lineNo),
                     "no horizon given (flag or \"# horizon=<hours>\" comment)");
  if (auto breach = checkProfile(events, *horizon)) {
    const std::string where = breach->eventIndex < eventLines.size()
                                  ? fmt::format("line {} (row {})", eventLines[breach->eventIndex],
                                                breach->eventIndex + 1)
                                  : fmt::format("line {}", lineNo);
    throw ParseError(breach->rule, where, breach->message);
  }
  return OperationalProfile(std::move(service), std::move(events), *horizon);
}

std::string serialize(const ModelDocument& doc) {
  ordered_json out;
  out["formatVersion"] = doc.formatVersion;
  out["start"] = doc.model.start().name;
  out["nodes"] = ordered_json::array();
  for (const auto& n : doc.model.nodes()) out["nodes"].push_back(n.name);
  out["edges"] = ordered_json::array();
  for (const auto& e : doc.model.edges())
    out["edges"].push_back({{"from", e.from.name}, {"to", e.to.name}, {"probability", e.probability}});
  if (!doc.metadata.empty()) {
    ordered_json meta = ordered_json::object();
    for (const auto& [k, v] : doc.metadata) meta[k] = v;
    out["metadata"] = meta;
  }
  return out.dump(2) + "\n";
}

std::string serialize(const CompositionDocument& doc) {
  ordered_json out;
  out["formatVersion"] = doc.formatVersion;
  out["compositionSets"] = ordered_json::array();
  for (const auto& set : doc.sets) {
    ordered_json s;
    s["name"] = set.name;
    s["services"] = ordered_json::array();
    for (const auto& p : set.services) {
      ordered_json row;
      row["name"] = p.name;
      row["mtbfHours"] = p.mtbfHours;
      row["mttrHours"] = p.mttrHours;
      if (auto it = doc.operationalProfiles.find({set.name, p.name}); it != doc.operationalProfiles.end())
        row["operationalProfile"] = it->second;
      s["services"].push_back(std::move(row));
    }
    out["compositionSets"].push_back(std::move(s));
  }
  return out.dump(2) + "\n";
}

std::string serialize(const OperationalProfile& profile) {
  std::string out;
  if (!profile.serviceName().empty()) out += "# service=" + profile.serviceName() + "\n";
  out += "timestamp_hours,state\n";
  for (const auto& e : profile.events()) {
    out += formatExact(e.timestampHours);
    out += e.state == ServiceState::Up ? ",up\n" : ",down\n";
  }
  out += "# horizon=" + formatExact(profile.horizonHours()) + "\n";
  return out;
}

}  // namespace wsrel
