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

#ifndef TDM_BNP_HPP_
#define TDM_BNP_HPP_

// Branch-and-price: depth-first search over allocate / forbid decisions on
// (client, slot) pairs, each node bounded by column generation.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tdm/colgen.hpp"
#include "tdm/ilp_direct.hpp"
#include "tdm/model.hpp"
#include "tdm/result.hpp"

namespace tdm {

enum class Branching { kSequential, kMaxProbability };

std::string to_string(Branching branching);

struct BnpConfig {
  std::optional<Branching> branching;  // default: sequential up to 16 clients
  // Hand a node to the monolithic program once its branching decisions reach
  // these fractions of f (allocations, forbids). Defaults depend on n.
  std::optional<double> completion_positive_pct;
  std::optional<double> completion_negative_pct;
  bool completion = true;
  double time_limit_s = 3000.0;
  std::optional<int> heuristic_runs;  // default: 1 when all clients are
                                      // bandwidth-dominated, else 8
  std::uint64_t seed = 1;
  bool lagrangian_early_stop = true;
  int lagrangian_every = 0;
  AddPolicy add_policy = AddPolicy::kAllNegative;
};

// Allocation / forbid thresholds for n clients, interpolated between the
// calibrated points 8, 16, 32, 64 and 128.
std::pair<double, double> default_completion_thresholds(int clients);

// Clients by increasing latency requirement, ties by index.
std::vector<int> latency_order(const ProblemInstance& instance);

// Next undecided (client, slot) in client-major, slot-minor order.
std::optional<std::pair<int, int>> branch_sequential(const DecisionSet& decisions,
                                                     const std::vector<int>& order);

// For the first client in order with undecided slots carrying master weight,
// the undecided slot with the largest total weight, leftmost on ties.
std::optional<std::pair<int, int>> branch_max_probability(const DecisionSet& decisions,
                                                          const MasterSolution& master,
                                                          const ColumnPool& pool,
                                                          const std::vector<int>& order);

// Solves the node's subtree with the monolithic program, looking only for
// schedules strictly below `cutoff`.
SolveResult complete_with_ilp(const DecisionSet& decisions, const ProblemInstance& instance,
                              double time_limit_s, double cutoff = kInfinity);

// One explored node, kept for offline soundness checks.
struct NodeRecord {
  std::vector<SlotFixing> decisions;
  std::vector<double> lagrangian_bounds;
  std::optional<double> converged_bound;  // set when pricing proved optimality
  double lower_bound = 0.0;
  bool pruned_by_bound = false;
  double upper_bound = kInfinity;  // incumbent when the node was closed
  std::string outcome;
};

SolveResult solve_bnp(const ProblemInstance& instance, const BnpConfig& config = {},
                      std::vector<NodeRecord>* log = nullptr);

}  // namespace tdm

#endif  // TDM_BNP_HPP_
