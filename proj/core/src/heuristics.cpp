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

#include "tdm/heuristics.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "log.hpp"
#include "tdm/colgen.hpp"
#include "tdm/verify.hpp"

namespace tdm {

AllocationHistory::AllocationHistory(int frame_size, int clients)
    : times_(static_cast<std::size_t>(frame_size),
             std::vector<int>(static_cast<std::size_t>(clients), 0)) {}

void AllocationHistory::record(const std::vector<std::optional<SlotMask>>& masks) {
  for (std::size_t s = 0; s < times_.size(); ++s) {
    int holders = 0;
    for (const auto& m : masks) {
      if (m && m->test(static_cast<int>(s))) ++holders;
    }
    if (holders == 0) continue;
    for (std::size_t c = 0; c < masks.size(); ++c) {
      const bool own = masks[c] && masks[c]->test(static_cast<int>(s));
      times_[s][c] += holders - (own ? 1 : 0);
    }
  }
}

std::vector<double> compute_coefficients(int client, double alpha,
                                         const AllocationHistory& history,
                                         const std::vector<std::optional<SlotMask>>& masks,
                                         std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto& own = masks[static_cast<std::size_t>(client)];
  const int f = history.frame_size();
  std::vector<double> out(static_cast<std::size_t>(f), 1.0);
  for (int s = 0; s < f; ++s) {
    bool others = false;
    for (std::size_t c = 0; c < masks.size(); ++c) {
      if (static_cast<int>(c) != client && masks[c] && masks[c]->test(s)) others = true;
    }
    const bool mine = own && own->test(s);
    double& v = out[static_cast<std::size_t>(s)];
    if (mine && others) {
      v = 1.0 + unit(rng) * 1.5;
    } else if (mine) {
      v = 0.9;
    } else if (others) {
      v = std::min(2.0, 1.0 + history.count(s, client) * alpha);
    }
  }
  return out;
}

namespace {

bool collision_free(const std::vector<std::optional<SlotMask>>& masks) {
  for (std::size_t a = 0; a < masks.size(); ++a) {
    if (!masks[a]) return false;
    for (std::size_t b = a + 1; b < masks.size(); ++b) {
      if (masks[b] && masks[a]->intersects(*masks[b])) return false;
    }
  }
  return true;
}

}  // namespace

SolveResult generative(const ProblemInstance& instance, const HeuristicConfig& config) {
  if (config.alpha <= 0) throw std::invalid_argument("alpha must be positive");
  const auto started = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  };
  instance.validate();
  const int n = instance.client_count();
  const int f = instance.frame_size;

  SolveResult result;
  result.status = SolveStatus::kNoFeasible;
  std::mt19937_64 rng(config.seed);
  std::vector<std::optional<SlotMask>> masks(static_cast<std::size_t>(n));
  AllocationHistory history(f, n);
  const DecisionSet free_choice(n, f);
  DualPrices prices;
  prices.sigma.assign(static_cast<std::size_t>(n), 0.0);

  int iteration = 0;
  for (; iteration < config.max_iterations; ++iteration) {
    const double remaining = config.time_limit_s - elapsed();
    if (remaining <= 0) break;
    const int client = iteration % n;
    prices.lambda = compute_coefficients(client, config.alpha, history, masks, rng);
    const PricingResult priced =
        price_client(instance, client, prices, free_choice, config.sub_model_gap, remaining);
    if (priced.status == PricingStatus::kInfeasible) break;
    if (!priced.column) break;
    masks[static_cast<std::size_t>(client)] = *priced.column;
    history.record(masks);
    if (collision_free(masks)) {
      std::vector<SlotMask> plain;
      for (const auto& m : masks) plain.push_back(*m);
      Schedule schedule = Schedule::from_masks(plain);
      if (schedule_feasible(schedule, instance).feasible) {
        result.status = SolveStatus::kFeasible;
        result.objective = Rational(schedule.allocated_total(), f);
        result.schedule = std::move(schedule);
        ++iteration;
        break;
      }
    }
  }
  result.stats["iterations"] = iteration;
  result.seconds = elapsed();
  detail::log()->debug("heuristic: {} after {} iterations", to_string(result.status), iteration);
  return result;
}

SolveResult continuous_allocation(const ProblemInstance& instance) {
  const auto started = std::chrono::steady_clock::now();
  instance.validate();
  const int n = instance.client_count();
  const int f = instance.frame_size;
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return instance.latency_bound(a) < instance.latency_bound(b);
  });

  SolveResult result;
  result.status = SolveStatus::kNoFeasible;
  Schedule schedule(f);
  int next = 0;
  bool fits = true;
  for (int client : order) {
    const int slots = min_slots(instance.client(client), f);
    if (next + slots > f) {
      fits = false;
      break;
    }
    for (int k = 0; k < slots; ++k) schedule.assign(next++, client);
  }
  if (fits && schedule_feasible(schedule, instance).feasible) {
    result.status = SolveStatus::kFeasible;
    result.objective = Rational(schedule.allocated_total(), f);
    result.schedule = std::move(schedule);
  }
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

}  // namespace tdm
