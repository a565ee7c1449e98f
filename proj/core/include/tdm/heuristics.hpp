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

#ifndef TDM_HEURISTICS_HPP_
#define TDM_HEURISTICS_HPP_

// Generative heuristic: clients take turns re-solving their own pricing
// program under slot coefficients that push them away from contested slots,
// until the per-client masks no longer collide. Plus the contiguous-block
// baseline.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "tdm/model.hpp"
#include "tdm/result.hpp"

namespace tdm {

struct HeuristicConfig {
  double alpha = 0.1;
  int max_iterations = 250;
  double sub_model_gap = 0.05;
  std::uint64_t seed = 1;
  double time_limit_s = 3000.0;
};

// times[slot][client]: how often the slot went to some other client, summed
// over all previous iterations.
class AllocationHistory {
 public:
  AllocationHistory(int frame_size, int clients);

  int frame_size() const { return static_cast<int>(times_.size()); }
  int count(int slot, int client) const {
    return times_[static_cast<std::size_t>(slot)][static_cast<std::size_t>(client)];
  }
  // Adds one per (slot, client, other holder) for the given masks.
  void record(const std::vector<std::optional<SlotMask>>& masks);

 private:
  std::vector<std::vector<int>> times_;
};

// Cost multiplier per slot for the client about to re-plan:
//   held only by others           -> min(2, 1 + count * alpha)
//   held by the client, unshared  -> 0.9
//   held by the client, shared    -> 1 + U[0, 1) * 1.5
//   free                          -> 1.0
std::vector<double> compute_coefficients(int client, double alpha,
                                         const AllocationHistory& history,
                                         const std::vector<std::optional<SlotMask>>& masks,
                                         std::mt19937_64& rng);

// kFeasible with a verified schedule, or kNoFeasible.
SolveResult generative(const ProblemInstance& instance, const HeuristicConfig& config = {});

// Clients in increasing latency order each get one contiguous block of their
// slot lower bound. kFeasible only when the layout verifies.
SolveResult continuous_allocation(const ProblemInstance& instance);

}  // namespace tdm

#endif  // TDM_HEURISTICS_HPP_
