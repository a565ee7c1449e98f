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

#ifndef TDM_COLGEN_HPP_
#define TDM_COLGEN_HPP_

// Column generation over per-client slot masks. The restricted master picks a
// convex combination of pooled columns per client, paying allocated slots / f
// plus a penalty of 10 per unit of slot over-allocation; pricing searches one
// client's feasible masks for negative reduced cost.

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "tdm/ilp_direct.hpp"
#include "tdm/lp.hpp"
#include "tdm/model.hpp"

namespace tdm {

inline constexpr double kOverallocationPenalty = 10.0;
inline constexpr double kReducedCostTol = 1e-6;

// Allocate / forbid decisions of one search node. Allocating a slot to a
// client implicitly forbids it to everybody else.
class DecisionSet {
 public:
  DecisionSet() = default;
  DecisionSet(int clients, int frame_size);

  int clients() const { return static_cast<int>(allocated_.size()); }
  int frame_size() const { return frame_; }

  // False when the decision contradicts the ones already present.
  bool allocate(int client, int slot);
  bool forbid(int client, int slot);

  bool decided(int client, int slot) const;
  bool is_allocated(int client, int slot) const { return allocated_[idx(client)].test(slot); }
  // Explicitly forbidden or allocated to another client.
  bool is_forbidden(int client, int slot) const;
  const SlotMask& allocated(int client) const { return allocated_[idx(client)]; }
  SlotMask blocked(int client) const;  // every slot the client may not use

  bool admits(int client, const SlotMask& mask) const;

  // Explicit decisions, allocations first, each group by client then slot.
  std::vector<SlotFixing> fixings() const;

  int positive_count() const { return positives_; }
  int negative_count() const { return negatives_; }

 private:
  static std::size_t idx(int client) { return static_cast<std::size_t>(client); }

  int frame_ = 0;
  std::vector<SlotMask> allocated_;
  std::vector<SlotMask> forbidden_;
  std::vector<int> owner_;  // client holding each slot, -1 when free
  int positives_ = 0;
  int negatives_ = 0;
};

class ColumnPool {
 public:
  ColumnPool() = default;
  ColumnPool(int clients, int frame_size);

  // Returns false for a duplicate.
  bool add(int client, const SlotMask& mask);
  const std::vector<SlotMask>& columns(int client) const {
    return columns_[static_cast<std::size_t>(client)];
  }
  int clients() const { return static_cast<int>(columns_.size()); }
  int frame_size() const { return frame_; }
  int size() const;

 private:
  int frame_ = 0;
  std::vector<std::vector<SlotMask>> columns_;
  std::vector<std::unordered_set<SlotMask, SlotMaskHash>> seen_;
};

class NodeInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MasterModel {
  LinearModel model;
  std::vector<std::pair<int, int>> column_of_var;  // (client, pool index)
  int overalloc_var = 0;                           // first y variable
  int capacity_row = 0;                            // first capacity row
  int convexity_row = 0;                           // first convexity row
};

// Only columns admitted by the decisions enter. Throws NodeInfeasible when a
// client is left without any.
MasterModel build_master(const ColumnPool& pool, const DecisionSet& decisions);

struct DualPrices {
  std::vector<double> lambda;  // per slot, >= 0
  std::vector<double> sigma;   // per client
};

DualPrices extract_duals(const LpSolution& lp, const MasterModel& master, int clients,
                         int frame_size);

struct MasterSolution {
  std::vector<std::vector<double>> weights;  // parallel to the pool columns
  std::vector<double> overalloc;
  double objective = 0.0;
  DualPrices duals;
};

// One schedule when every client puts weight 1 on a single column and no slot
// is over-allocated.
std::optional<Schedule> integral_schedule(const MasterSolution& master,
                                          const ColumnPool& pool);

enum class PricingStatus { kOptimal, kFeasible, kInfeasible, kTimedOut };

struct PricingResult {
  PricingStatus status = PricingStatus::kInfeasible;
  std::optional<SlotMask> column;
  double reduced_cost = 0.0;  // sum_j (lambda_j + 1/f) x_j - sigma_i
};

PricingResult price_client(const ProblemInstance& instance, int client,
                           const DualPrices& duals, const DecisionSet& decisions,
                           double gap = 0.0, double time_limit_s = kInfinity);

enum class AddPolicy {
  kAllNegative,    // add every negative column found in a round
  kFirstNegative,  // stop the round at the first client pricing negatively
};

struct ColgenOptions {
  double upper_bound = kInfinity;  // incumbent objective
  int lagrangian_every = 0;        // 0 means every client-count iterations
  bool early_stop = true;
  AddPolicy add_policy = AddPolicy::kAllNegative;
  std::chrono::steady_clock::time_point deadline =
      std::chrono::steady_clock::time_point::max();
};

struct ColgenIteration {
  int iteration = 0;
  double master_objective = 0.0;
  std::vector<std::optional<double>> reduced_costs;  // unset when not priced
  std::optional<double> lagrangian_bound;
};

enum class ColgenStatus { kConverged, kEarlyStopped, kInfeasible, kTimedOut };

std::string to_string(ColgenStatus status);

struct ColgenResult {
  ColgenStatus status = ColgenStatus::kConverged;
  MasterSolution master;
  double lower_bound = -kInfinity;  // valid lower bound for the node
  int iterations = 0;
  int columns_added = 0;
  std::vector<ColgenIteration> trace;
};

ColgenResult column_generation(ColumnPool& pool, const DecisionSet& decisions,
                               const ProblemInstance& instance,
                               const ColgenOptions& options = {});

}  // namespace tdm

#endif  // TDM_COLGEN_HPP_
