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

#include "windows.hpp"

#include <algorithm>
#include <limits>

namespace tdm::detail {

namespace {

Rational latency_of(const ClientRequirement& req, int frame_size) {
  return req.latency ? *req.latency : Rational(frame_size - 1);
}

int demand(const ClientRequirement& req, int frame_size, int duration) {
  return static_cast<int>(
      ceil(req.rate * (Rational(duration) - latency_of(req, frame_size))));
}

}  // namespace

int single_point_duration(const ClientRequirement& req, int frame_size) {
  return std::min(frame_size, static_cast<int>(floor(latency_of(req, frame_size))) + 1);
}

std::vector<WindowSpec> window_specs(const ClientRequirement& req, int frame_size,
                                     bool prune_below_latency, bool single_point) {
  std::vector<WindowSpec> out;
  if (req.rate == Rational(0)) return out;
  if (single_point && dominance_class(req, frame_size) == Dominance::kLatency) {
    const int j = single_point_duration(req, frame_size);
    out.push_back({j, demand(req, frame_size, j)});
    return out;
  }
  for (int j = 1; j <= frame_size; ++j) {
    const int d = demand(req, frame_size, j);
    if (d <= 0 && prune_below_latency) continue;
    out.push_back({j, d});
  }
  return out;
}

Constraint window_row(const std::function<int(int)>& var_of_slot, int frame_size,
                      int start, int duration, int demand) {
  Constraint row;
  row.sense = Sense::kGreaterEqual;
  row.rhs = demand;
  row.terms.reserve(static_cast<std::size_t>(duration));
  for (int t = 0; t < duration; ++t) {
    row.terms.push_back({var_of_slot((start + t) % frame_size), 1.0});
  }
  return row;
}

std::vector<std::pair<int, WindowSpec>> violated_windows(
    std::span<const double> slot_values, std::span<const WindowSpec> specs, double tol) {
  const auto f = static_cast<int>(slot_values.size());
  std::vector<double> prefix(2 * slot_values.size() + 1, 0.0);
  for (int i = 0; i < 2 * f; ++i) {
    prefix[static_cast<std::size_t>(i) + 1] =
        prefix[static_cast<std::size_t>(i)] + slot_values[static_cast<std::size_t>(i % f)];
  }
  std::vector<std::pair<int, WindowSpec>> out;
  for (const auto& spec : specs) {
    int best_start = -1;
    double best_sum = std::numeric_limits<double>::infinity();
    for (int k = 0; k < f; ++k) {
      const double sum = prefix[static_cast<std::size_t>(k + spec.duration)] -
                         prefix[static_cast<std::size_t>(k)];
      if (sum < best_sum - 1e-12) {
        best_sum = sum;
        best_start = k;
      }
    }
    if (best_start >= 0 && best_sum < spec.demand - tol) out.emplace_back(best_start, spec);
  }
  return out;
}

}  // namespace tdm::detail
