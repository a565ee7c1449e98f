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

#ifndef TDM_SRC_WINDOWS_HPP_
#define TDM_SRC_WINDOWS_HPP_

// Window service rows shared by the monolithic program and the per-client
// pricing program.

#include <functional>
#include <span>
#include <vector>

#include "tdm/lp.hpp"
#include "tdm/model.hpp"

namespace tdm::detail {

struct WindowSpec {
  int duration = 0;
  int demand = 0;  // ceil(rate * (duration - latency)), may be <= 0
};

// Durations carrying a window row for the client, with their demands.
std::vector<WindowSpec> window_specs(const ClientRequirement& req, int frame_size,
                                     bool prune_below_latency, bool single_point);

// Duration of the single row kept for latency-dominated clients.
int single_point_duration(const ClientRequirement& req, int frame_size);

Constraint window_row(const std::function<int(int)>& var_of_slot, int frame_size,
                      int start, int duration, int demand);

// For each spec, the start whose window sum falls furthest below the demand
// (first such start on ties), if it falls below by more than tol.
std::vector<std::pair<int, WindowSpec>> violated_windows(
    std::span<const double> slot_values, std::span<const WindowSpec> specs, double tol);

}  // namespace tdm::detail

#endif  // TDM_SRC_WINDOWS_HPP_
