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

#ifndef TDM_RESULT_HPP_
#define TDM_RESULT_HPP_

#include <map>
#include <optional>
#include <string>

#include "tdm/model.hpp"
#include "tdm/rational.hpp"

namespace tdm {

enum class SolveStatus { kOptimal, kFeasible, kInfeasible, kTimedOut, kNoFeasible };

std::string to_string(SolveStatus status);

// Common outcome of every schedule synthesis method.
struct SolveResult {
  SolveStatus status = SolveStatus::kInfeasible;
  std::optional<Schedule> schedule;
  std::optional<Rational> objective;  // allocated slots / f
  double best_bound = 0.0;            // proven lower bound on the objective
  double seconds = 0.0;
  std::map<std::string, double> stats;

  bool has_schedule() const { return schedule.has_value(); }
};

}  // namespace tdm

#endif  // TDM_RESULT_HPP_
