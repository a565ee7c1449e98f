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


#ifndef TDM_TESTS_ORACLES_HPP_
#define TDM_TESTS_ORACLES_HPP_

// Reference implementations written directly from the definitions, sharing
// no code with the library beyond the plain data types. Slow on purpose.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "tdm/lp.hpp"
#include "tdm/model.hpp"

namespace tdm::oracle {

using Bits = std::vector<int>;  // 0/1 per slot

Bits bits_of(const Schedule& schedule, int client);

// Slots held among the `duration` consecutive slots starting at `start`,
// counted one by one with wrap-around.
int window(const Bits& bits, int start, int duration);

// max(0, max over start, duration of duration - window / rate).
Rational latency(const Bits& bits, const Rational& rate);

// Rate met exactly and every window meets rate * (duration - latency bound).
bool client_ok(const Bits& bits, const ClientRequirement& req, int frame_size);

bool schedule_ok(const Schedule& schedule, const ProblemInstance& instance);

// Minimum allocated slots over every labeling of every slot, no pruning.
// Only for (n + 1)^f up to a few million.
std::optional<int> exhaustive_min_slots(const ProblemInstance& instance);

// Same, restricted to labelings honoring the fixings (client, slot, allocate).
std::optional<int> exhaustive_min_slots(const ProblemInstance& instance,
                                        const std::vector<std::tuple<int, int, bool>>& fixings);

// Worst-case finishing times by direct recursion.
std::vector<double> finishing_times(const std::vector<std::pair<double, double>>& requests,
                                    double latency, double rate);

// Small random instances for the cross-method sweeps.
ProblemInstance random_instance(std::mt19937_64& rng, int max_clients, int min_frame,
                                int max_frame);

// LP optimum by enumerating every vertex of a model with finite bounds and
// at most a handful of variables. Empty when infeasible.
std::optional<double> vertex_lp_optimum(const LinearModel& model);

// MIP optimum by enumerating all 0/1 points of a pure binary model.
std::optional<double> enumerate_binary_optimum(const LinearModel& model);

}  // namespace tdm::oracle

#endif  // TDM_TESTS_ORACLES_HPP_
