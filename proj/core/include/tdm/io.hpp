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


#ifndef TDM_IO_HPP_
#define TDM_IO_HPP_

// File formats shared by the command-line tool and the tests. Numbers that
// feed feasibility checks travel as decimal or "p/q" strings so they parse to
// exact rationals.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "tdm/model.hpp"
#include "tdm/result.hpp"
#include "tdm/verify.hpp"

namespace tdm::io {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A schedule file whose frame size differs from its instance.
class FrameSizeMismatch : public FormatError {
 public:
  using FormatError::FormatError;
};

// Instance JSON:
//   {"frame_size": 64,
//    "clients": [{"name": "cpu", "rate": "0.25", "latency_slots": "3" | null}]}
// An optional top-level "comment" string is accepted and dropped.
nlohmann::json instance_to_json(const ProblemInstance& instance);
ProblemInstance instance_from_json(const nlohmann::json& doc);

// Canonical text: two-space indentation and a trailing newline, so parsing
// and re-serializing a written file reproduces it byte for byte.
std::string serialize_instance(const ProblemInstance& instance);
ProblemInstance parse_instance(std::string_view text);

// Schedule JSON:
//   {"frame_size": f, "slots": ["cpu", null, ["cpu", "gpu"], ...],
//    "phi": {"cpu": 2, ...}, "theta": {"cpu": "14/3" | null, ...},
//    "objective": "0.8"}
// A slot may list several names, which lets a file describe a colliding
// allocation for the verifier. "phi", "theta" and "objective" are derived and
// ignored when reading.
nlohmann::json schedule_to_json(const Schedule& schedule, const ProblemInstance& instance);

// One mask per client, in instance order. Throws FrameSizeMismatch when the
// slot count differs from the instance, FormatError on unknown names.
std::vector<SlotMask> schedule_masks_from_json(const nlohmann::json& doc,
                                               const ProblemInstance& instance);

// Throws FormatError when a slot is claimed by more than one client.
Schedule schedule_from_json(const nlohmann::json& doc, const ProblemInstance& instance);

nlohmann::json report_to_json(const ScheduleReport& report, const ProblemInstance& instance);

nlohmann::json result_to_json(const SolveResult& result, const ProblemInstance& instance,
                              std::string_view method);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);
nlohmann::json read_json(const std::filesystem::path& path);

// Batch manifest CSV: path,class,n,f,total_rate,latency_load
struct ManifestEntry {
  std::string path;
  std::string cls;
  int clients = 0;
  int frame_size = 0;
  Rational total_rate;
  Rational latency_load;
};

void write_manifest(std::ostream& out, const std::vector<ManifestEntry>& entries);
std::vector<ManifestEntry> read_manifest(std::istream& in);

// Benchmark CSV. Per-run rows carry kind "run"; one "summary" row per method
// holds the failure count and the mean distance over the solved instances.
struct BenchRow {
  std::string instance;
  std::string method;
  std::string status;
  std::optional<Rational> objective;
  double bound = 0.0;
  std::optional<Rational> distance;  // objective minus the best objective found
  double seconds = 0.0;
};

struct BenchSummary {
  std::string method;
  int runs = 0;
  int failures = 0;
  std::optional<double> mean_distance;
  double seconds = 0.0;
};

// Fills in the distance of every row that found a schedule and returns the
// per-method summaries in first-appearance order.
std::vector<BenchSummary> summarize(std::vector<BenchRow>& rows);

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows,
                     const std::vector<BenchSummary>& summaries);

std::string csv_field(std::string_view text);
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace tdm::io

#endif  // TDM_IO_HPP_
