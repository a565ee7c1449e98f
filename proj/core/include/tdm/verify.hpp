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

#ifndef TDM_VERIFY_HPP_
#define TDM_VERIFY_HPP_

// Independent checker. Verdicts use exact rational arithmetic and only the
// latency-rate math of model.hpp, never the solvers' constraint builders.

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdm/ilp_direct.hpp"
#include "tdm/model.hpp"

namespace tdm {

struct Violation {
  enum class Kind { kCollision, kRate, kLatency };
  Kind kind = Kind::kRate;
  std::vector<int> clients;  // clients involved
  int slot = -1;             // collision slot, 0-based
  int start = -1;            // latency window start, 0-based
  int duration = 0;          // latency window length
  std::string message;
};

std::string to_string(Violation::Kind kind);

struct ClientReport {
  int client = 0;
  bool feasible = true;
  int slots = 0;
  Rational rate;                              // allocated rate
  std::optional<Rational> latency;            // at the allocated rate
  std::optional<Rational> required_latency;   // least latency at the required rate
  std::vector<Violation> violations;
};

struct ScheduleReport {
  bool feasible = true;
  Rational objective;
  std::vector<ClientReport> clients;
  std::vector<Violation> collisions;
};

// A client is feasible when it holds at least rate * f slots and every window
// of j slots grants at least rate * (j - latency) of them.
ClientReport client_feasible(const SlotMask& mask, const ClientRequirement& req,
                             int frame_size);

ScheduleReport schedule_feasible(const Schedule& schedule, const ProblemInstance& instance);

// Per-client masks that may overlap; overlaps are reported as collisions.
ScheduleReport schedule_feasible(std::span<const SlotMask> masks,
                                 const ProblemInstance& instance);

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BruteForceOptions {
  double budget = 1e8;  // refuse when (n + 1)^f exceeds this
  std::vector<SlotFixing> fixings;
};

struct BruteForceResult {
  std::optional<Schedule> schedule;
  std::optional<Rational> objective;
  long leaves = 0;
};

// Every client-feasible mask of one client, by increasing slot count.
std::vector<SlotMask> feasible_masks(const ClientRequirement& req, int frame_size);

// Exhaustive minimum. Without fixings, only schedules using slot 0 are
// examined (any schedule rotates into one). Throws BudgetExceeded.
BruteForceResult brute_force_optimum(const ProblemInstance& instance,
                                     const BruteForceOptions& options = {});

}  // namespace tdm

#endif  // TDM_VERIFY_HPP_
