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

#ifndef TDM_MIP_HPP_
#define TDM_MIP_HPP_

// Branch-and-bound over the dual simplex of lp.hpp. Nodes are explored
// best-bound first; after branching the search dives into the child on the
// rounding side of the branching variable.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tdm/lp.hpp"

namespace tdm {

enum class MipStatus { kOptimal, kFeasible, kInfeasible, kTimedOut };

std::string to_string(MipStatus status);

// Called on every relaxation optimum that satisfies all active rows, with
// `integral` telling whether the integer variables are integral. Returned
// rows become global constraints. At integral points an empty result accepts
// the candidate.
using LazyCallback =
    std::function<std::vector<Constraint>(std::span<const double> x, bool integral)>;

struct MipOptions {
  double time_limit_s = kInfinity;
  double relative_gap = 0.0;
  // Positive when every feasible objective lies on a grid of this spacing;
  // nodes that cannot beat the incumbent by one full step are pruned.
  double objective_step = 0.0;
  // Only solutions strictly better than this are wanted; the search prunes
  // as if an incumbent of this value existed and reports Infeasible when
  // nothing better turns up.
  double cutoff = kInfinity;
  double integrality_tol = 1e-6;
  long node_limit = -1;
  // Pool rows entering the relaxation per separation round.
  int pool_batch = 100;
  LazyCallback lazy;
  std::optional<std::vector<double>> initial_solution;
};

struct MipSolution {
  MipStatus status = MipStatus::kInfeasible;
  double objective = kInfinity;
  double best_bound = -kInfinity;
  std::vector<double> assignment;
  long nodes = 0;
  long lp_iterations = 0;
  int lazy_rows = 0;
  int pool_rows = 0;
};

MipSolution solve_mip(const LinearModel& model, const MipOptions& options = {});

}  // namespace tdm

#endif  // TDM_MIP_HPP_
