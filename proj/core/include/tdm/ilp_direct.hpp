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

#ifndef TDM_ILP_DIRECT_HPP_
#define TDM_ILP_DIRECT_HPP_

// Monolithic binary program over x(client, slot): minimize allocated slots / f
// subject to one client per slot, a slot-count lower bound per client, and the
// window service rows sum_{window(k, j)} x >= ceil(rate * (j - latency)).

#include <optional>
#include <stdexcept>
#include <vector>

#include "tdm/lp.hpp"
#include "tdm/model.hpp"
#include "tdm/result.hpp"

namespace tdm {

struct SlotFixing {
  int client = 0;
  int slot = 0;  // 0-based
  bool allocate = true;

  friend bool operator==(const SlotFixing&, const SlotFixing&) = default;
};

class ContradictoryFixings : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct IlpBuildOptions {
  // Skip window rows whose demand is non-positive (durations up to the latency).
  bool prune_below_latency = true;
  // Latency-dominated clients get window rows for a single duration only.
  bool latency_dominated_single_point = true;
  // Give slot 0 to the client with the smallest slot lower bound.
  bool fix_first_slot = true;
  std::vector<SlotFixing> partial_fixings;
  // Window rows are materialized as pool rows while their count stays below
  // this; larger models separate them on demand during the solve.
  long max_materialized_rows = 60'000;
};

struct IlpModel {
  LinearModel model;
  int frame_size = 0;
  int clients = 0;
  bool windows_materialized = true;
  std::optional<int> first_slot_client;

  int var(int client, int slot) const { return client * frame_size + slot; }
};

// Throws ContradictoryFixings, InvalidInstance.
IlpModel build_ilp(const ProblemInstance& instance, const IlpBuildOptions& options = {});

struct IlpSolveOptions {
  double time_limit_s = 3000.0;
  double relative_gap = 0.0;
  std::optional<Schedule> warm_start;
  // Report Infeasible unless a schedule strictly below this objective exists.
  double cutoff = kInfinity;
};

SolveResult solve_direct(const ProblemInstance& instance,
                         const IlpBuildOptions& build = {},
                         const IlpSolveOptions& solve = {});

}  // namespace tdm

#endif  // TDM_ILP_DIRECT_HPP_
