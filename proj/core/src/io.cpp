// Copyright 2026 The tdm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "tdm/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <boost/tokenizer.hpp>

namespace tdm::io {

using nlohmann::json;

namespace {

constexpr std::string_view kManifestHeader = "path,class,n,f,total_rate,latency_load";
constexpr std::string_view kBenchHeader =
    "kind,instance,method,status,objective,bound,distance,seconds,failures";

Rational rational_field(const json& value, const std::string& what) {
  if (value.is_string()) {
    try {
      return parse_rational(value.get<std::string>());
    } catch (const std::exception& e) {
      throw FormatError(what + ": " + e.what());
    }
  }
  if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
  throw FormatError(what + " must be a decimal string");
}

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::ostringstream out;
  out << std::setprecision(12) << value;
  return out.str();
}

json optional_rational(const std::optional<Rational>& value) {
  return value ? json(format_rational(*value)) : json(nullptr);
}

json violation_to_json(const Violation& v, const ProblemInstance& instance) {
  json names = json::array();
  for (int c : v.clients) names.push_back(instance.client(c).name);
  json out = {{"kind", to_string(v.kind)}, {"clients", names}, {"message", v.message}};
  if (v.slot >= 0) out["slot"] = v.slot + 1;
  if (v.start >= 0) {
    out["start"] = v.start + 1;
    out["duration"] = v.duration;
  }
  return out;
}

int client_index(const ProblemInstance& instance, const std::string& name) {
  for (int i = 0; i < instance.client_count(); ++i) {
    if (instance.client(i).name == name) return i;
  }
  throw FormatError("schedule names unknown client '" + name + "'");
}

}  // namespace

json instance_to_json(const ProblemInstance& instance) {
  json clients = json::array();
  for (const auto& c : instance.clients) {
    clients.push_back({{"name", c.name},
                       {"rate", format_rational(c.rate)},
                       {"latency_slots", optional_rational(c.latency)}});
  }
  return {{"frame_size", instance.frame_size}, {"clients", clients}};
}

ProblemInstance instance_from_json(const json& doc) {
  if (!doc.is_object()) throw FormatError("instance must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "frame_size" && key != "clients" && key != "comment") {
      throw FormatError("unexpected instance field '" + key + "'");
    }
  }
  if (!doc.contains("frame_size") || !doc["frame_size"].is_number_integer()) {
    throw FormatError("frame_size must be an integer");
  }
  if (!doc.contains("clients") || !doc["clients"].is_array()) {
    throw FormatError("clients must be an array");
  }
  ProblemInstance instance;
  instance.frame_size = doc["frame_size"].get<int>();
  std::set<std::string> names;
  for (const auto& entry : doc["clients"]) {
    if (!entry.is_object()) throw FormatError("each client must be a JSON object");
    for (const auto& [key, value] : entry.items()) {
      if (key != "name" && key != "rate" && key != "latency_slots") {
        throw FormatError("unexpected client field '" + key + "'");
      }
    }
    ClientRequirement req;
    if (!entry.contains("name") || !entry["name"].is_string()) {
      throw FormatError("client name must be a string");
    }
    req.name = entry["name"].get<std::string>();
    if (req.name.empty()) throw FormatError("client name must not be empty");
    if (!names.insert(req.name).second) {
      throw FormatError("duplicate client name '" + req.name + "'");
    }
    if (!entry.contains("rate")) throw FormatError("client '" + req.name + "' has no rate");
    req.rate = rational_field(entry["rate"], "rate of '" + req.name + "'");
    if (entry.contains("latency_slots") && !entry["latency_slots"].is_null()) {
      req.latency = rational_field(entry["latency_slots"], "latency_slots of '" + req.name + "'");
    }
    instance.clients.push_back(std::move(req));
  }
  try {
    instance.validate();
  } catch (const InvalidInstance& e) {
    throw FormatError(e.what());
  }
  return instance;
}

std::string serialize_instance(const ProblemInstance& instance) {
  return instance_to_json(instance).dump(2) + "\n";
}

ProblemInstance parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
  return instance_from_json(doc);
}

json schedule_to_json(const Schedule& schedule, const ProblemInstance& instance) {
  json slots = json::array();
  for (int s = 0; s < schedule.frame_size(); ++s) {
    const int c = schedule.at(s);
    slots.push_back(c == Schedule::kEmpty ? json(nullptr) : json(instance.client(c).name));
  }
  json phi = json::object();
  json theta = json::object();
  for (int i = 0; i < instance.client_count(); ++i) {
    const auto& name = instance.client(i).name;
    phi[name] = schedule.allocated(i);
    theta[name] = schedule.allocated(i) > 0
                      ? json(format_rational(service_latency(schedule, i)))
                      : json(nullptr);
  }
  return {{"frame_size", schedule.frame_size()},
          {"slots", slots},
          {"phi", phi},
          {"theta", theta},
          {"objective",
           format_rational(Rational(schedule.allocated_total(), schedule.frame_size()))}};
}

std::vector<SlotMask> schedule_masks_from_json(const json& doc,
                                               const ProblemInstance& instance) {
  if (!doc.is_object() || !doc.contains("slots") || !doc["slots"].is_array()) {
    throw FormatError("schedule must be an object with a slots array");
  }
  const int f = instance.frame_size;
  if (doc.contains("frame_size")) {
    if (!doc["frame_size"].is_number_integer()) {
      throw FormatError("frame_size must be an integer");
    }
    if (doc["frame_size"].get<int>() != f) {
      throw FrameSizeMismatch("schedule frame size " +
                              std::to_string(doc["frame_size"].get<int>()) +
                              " differs from the instance frame size " + std::to_string(f));
    }
  }
  const auto& slots = doc["slots"];
  if (static_cast<int>(slots.size()) != f) {
    throw FrameSizeMismatch("schedule has " + std::to_string(slots.size()) +
                            " slots but the instance frame size is " + std::to_string(f));
  }
  std::vector<SlotMask> masks(static_cast<std::size_t>(instance.client_count()), SlotMask(f));
  for (int s = 0; s < f; ++s) {
    const auto& entry = slots[static_cast<std::size_t>(s)];
    auto claim = [&](const json& name) {
      if (!name.is_string()) throw FormatError("slot entries must be client names");
      masks[static_cast<std::size_t>(client_index(instance, name.get<std::string>()))].set(s);
    };
    if (entry.is_null()) continue;
    if (entry.is_array()) {
      for (const auto& name : entry) claim(name);
    } else {
      claim(entry);
    }
  }
  return masks;
}

Schedule schedule_from_json(const json& doc, const ProblemInstance& instance) {
  const auto masks = schedule_masks_from_json(doc, instance);
  try {
    return Schedule::from_masks(masks);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

json report_to_json(const ScheduleReport& report, const ProblemInstance& instance) {
  json clients = json::array();
  for (const auto& c : report.clients) {
    const auto& req = instance.client(c.client);
    json violations = json::array();
    for (const auto& v : c.violations) violations.push_back(violation_to_json(v, instance));
    clients.push_back({{"name", req.name},
                       {"feasible", c.feasible},
                       {"slots", c.slots},
                       {"rate", format_rational(c.rate)},
                       {"required_rate", format_rational(req.rate)},
                       {"latency", optional_rational(c.latency)},
                       {"latency_at_required_rate", optional_rational(c.required_latency)},
                       {"required_latency",
                        format_rational(instance.latency_bound(c.client))},
                       {"violations", violations}});
  }
  json collisions = json::array();
  for (const auto& v : report.collisions) collisions.push_back(violation_to_json(v, instance));
  return {{"feasible", report.feasible},
          {"objective", format_rational(report.objective)},
          {"clients", clients},
          {"collisions", collisions}};
}

json result_to_json(const SolveResult& result, const ProblemInstance& instance,
                    std::string_view method) {
  json stats = json::object();
  for (const auto& [key, value] : result.stats) stats[key] = value;
  json out = {{"method", std::string(method)},
              {"status", to_string(result.status)},
              {"objective", optional_rational(result.objective)},
              {"best_bound", std::isfinite(result.best_bound) ? json(result.best_bound)
                                                              : json(nullptr)},
              {"seconds", result.seconds},
              {"stats", stats}};
  if (result.schedule) {
    out["schedule"] = schedule_to_json(*result.schedule, instance);
    json clients = json::array();
    for (int i = 0; i < instance.client_count(); ++i) {
      const auto& req = instance.client(i);
      const int slots = result.schedule->allocated(i);
      clients.push_back(
          {{"name", req.name},
           {"slots", slots},
           {"rate", format_rational(allocated_rate(*result.schedule, i))},
           {"required_rate", format_rational(req.rate)},
           {"theta", slots > 0 ? json(format_rational(service_latency(*result.schedule, i)))
                               : json(nullptr)},
           {"required_latency", format_rational(instance.latency_bound(i))}});
    }
    out["clients"] = clients;
  } else {
    out["schedule"] = nullptr;
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

json read_json(const std::filesystem::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": malformed JSON: " + e.what());
  }
}

// Fields are quoted only when needed; inside quotes, backslash escapes a
// quote or a backslash, matching the reader's tokenizer.
std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\\\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  using Separator = boost::escaped_list_separator<char>;
  boost::tokenizer<Separator> tokens(line, Separator('\\', ',', '"'));
  try {
    return {tokens.begin(), tokens.end()};
  } catch (const boost::escaped_list_error& e) {
    throw FormatError(std::string("malformed CSV line: ") + e.what());
  }
}

void write_manifest(std::ostream& out, const std::vector<ManifestEntry>& entries) {
  out << kManifestHeader << '\n';
  for (const auto& e : entries) {
    out << csv_field(e.path) << ',' << csv_field(e.cls) << ',' << e.clients << ','
        << e.frame_size << ',' << format_rational(e.total_rate) << ','
        << format_rational(e.latency_load) << '\n';
  }
}

std::vector<ManifestEntry> read_manifest(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("manifest is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kManifestHeader) throw FormatError("manifest header must be " +
                                                 std::string(kManifestHeader));
  std::vector<ManifestEntry> entries;
  int number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 6) {
      throw FormatError("manifest line " + std::to_string(number) + " needs 6 fields");
    }
    ManifestEntry e;
    e.path = fields[0];
    e.cls = fields[1];
    try {
      e.clients = std::stoi(fields[2]);
      e.frame_size = std::stoi(fields[3]);
      e.total_rate = parse_rational(fields[4]);
      e.latency_load = parse_rational(fields[5]);
    } catch (const std::exception& ex) {
      throw FormatError("manifest line " + std::to_string(number) + ": " + ex.what());
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<BenchSummary> summarize(std::vector<BenchRow>& rows) {
  std::map<std::string, Rational> best;
  for (const auto& r : rows) {
    if (!r.objective) continue;
    auto [it, inserted] = best.emplace(r.instance, *r.objective);
    if (!inserted && *r.objective < it->second) it->second = *r.objective;
  }
  std::vector<BenchSummary> summaries;
  std::map<std::string, std::size_t> index;
  std::map<std::string, std::pair<double, int>> distance_sum;
  for (auto& r : rows) {
    auto [it, inserted] = index.emplace(r.method, summaries.size());
    if (inserted) {
      BenchSummary fresh;
      fresh.method = r.method;
      summaries.push_back(std::move(fresh));
    }
    auto& s = summaries[it->second];
    ++s.runs;
    s.seconds += r.seconds;
    if (!r.objective) {
      r.distance.reset();
      ++s.failures;
      continue;
    }
    r.distance = *r.objective - best.at(r.instance);
    auto& acc = distance_sum[r.method];
    acc.first += to_double(*r.distance);
    ++acc.second;
  }
  for (auto& s : summaries) {
    const auto it = distance_sum.find(s.method);
    if (it != distance_sum.end() && it->second.second > 0) {
      s.mean_distance = it->second.first / it->second.second;
    }
  }
  return summaries;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows,
                     const std::vector<BenchSummary>& summaries) {
  out << kBenchHeader << '\n';
  for (const auto& r : rows) {
    out << "run," << csv_field(r.instance) << ',' << csv_field(r.method) << ','
        << csv_field(r.status) << ',' << (r.objective ? format_rational(*r.objective) : "")
        << ',' << format_double(r.bound) << ','
        << (r.distance ? format_rational(*r.distance) : "") << ','
        << format_double(r.seconds) << ",\n";
  }
  for (const auto& s : summaries) {
    out << "summary,," << csv_field(s.method) << ",,,,"
        << (s.mean_distance ? format_double(*s.mean_distance) : "") << ','
        << format_double(s.seconds) << ',' << s.failures << '\n';
  }
}

}  // namespace tdm::io
