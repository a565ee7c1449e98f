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

#include "tdm/ilp_direct.hpp"

#include <chrono>
#include <cmath>
#include <map>

#include "log.hpp"
#include "tdm/mip.hpp"
#include "windows.hpp"

namespace tdm {

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "Optimal";
    case SolveStatus::kFeasible:
      return "Feasible";
    case SolveStatus::kInfeasible:
      return "Infeasible";
    case SolveStatus::kTimedOut:
      return "TimedOut";
    case SolveStatus::kNoFeasible:
      return "NoFeasible";
  }
  return "Unknown";
}

namespace {

void check_fixings(const ProblemInstance& instance, const std::vector<SlotFixing>& fixings) {
  std::map<std::pair<int, int>, bool> decided;
  std::map<int, int> owner;
  for (const auto& fx : fixings) {
    if (fx.client < 0 || fx.client >= instance.client_count()) {
      throw UnknownClient("fixing names unknown client " + std::to_string(fx.client));
    }
    if (fx.slot < 0 || fx.slot >= instance.frame_size) {
      throw ContradictoryFixings("fixing names slot outside the frame");
    }
    auto [it, inserted] = decided.emplace(std::pair{fx.client, fx.slot}, fx.allocate);
    if (!inserted && it->second != fx.allocate) {
      throw ContradictoryFixings("client " + std::to_string(fx.client) + " slot " +
                                 std::to_string(fx.slot + 1) +
                                 " both allocated and forbidden");
    }
    if (fx.allocate) {
      auto [o, fresh] = owner.emplace(fx.slot, fx.client);
      if (!fresh && o->second != fx.client) {
        throw ContradictoryFixings("slot " + std::to_string(fx.slot + 1) +
                                   " allocated to two clients");
      }
    }
  }
}

}  // namespace

IlpModel build_ilp(const ProblemInstance& instance, const IlpBuildOptions& options) {
  instance.validate();
  check_fixings(instance, options.partial_fixings);
  const int f = instance.frame_size;
  const int n = instance.client_count();

  IlpModel out;
  out.frame_size = f;
  out.clients = n;
  auto& model = out.model;
  for (int i = 0; i < n; ++i) {
    for (int s = 0; s < f; ++s) {
      model.add_binary(1.0 / f, "x_" + std::to_string(i) + "_" + std::to_string(s + 1));
    }
  }
  auto fix_allocate = [&](int client, int slot) {
    model.variable(out.var(client, slot)).lower = 1.0;
    for (int other = 0; other < n; ++other) {
      if (other != client) model.variable(out.var(other, slot)).upper = 0.0;
    }
  };
  for (const auto& fx : options.partial_fixings) {
    if (fx.allocate) {
      fix_allocate(fx.client, fx.slot);
    } else {
      model.variable(out.var(fx.client, fx.slot)).upper = 0.0;
    }
  }
  if (options.fix_first_slot) {
    int best = -1;
    int best_slots = 0;
    for (int i = 0; i < n; ++i) {
      const int slots = min_slots(instance.client(i), f);
      if (slots >= 1 && (best < 0 || slots < best_slots)) {
        best = i;
        best_slots = slots;
      }
    }
    if (best >= 0) {
      fix_allocate(best, 0);
      out.first_slot_client = best;
    }
  }

  for (int s = 0; s < f; ++s) {
    Constraint row;
    row.sense = Sense::kLessEqual;
    row.rhs = 1.0;
    row.name = "capacity_" + std::to_string(s + 1);
    for (int i = 0; i < n; ++i) row.terms.push_back({out.var(i, s), 1.0});
    model.add_constraint(std::move(row));
  }
  for (int i = 0; i < n; ++i) {
    const int slots = min_slots(instance.client(i), f);
    if (slots <= 0) continue;
    Constraint row;
    row.sense = Sense::kGreaterEqual;
    row.rhs = slots;
    row.name = "slots_" + std::to_string(i);
    for (int s = 0; s < f; ++s) row.terms.push_back({out.var(i, s), 1.0});
    model.add_constraint(std::move(row));
  }

  long window_rows = 0;
  std::vector<std::vector<detail::WindowSpec>> specs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    specs[static_cast<std::size_t>(i)] =
        detail::window_specs(instance.client(i), f, options.prune_below_latency,
                             options.latency_dominated_single_point);
    window_rows += static_cast<long>(specs[static_cast<std::size_t>(i)].size()) * f;
  }
  out.windows_materialized = window_rows <= options.max_materialized_rows;
  for (int i = 0; i < n; ++i) {
    const int anchor = detail::single_point_duration(instance.client(i), f);
    auto var_of_slot = [&out, i](int slot) { return out.var(i, slot); };
    for (const auto& spec : specs[static_cast<std::size_t>(i)]) {
      const bool anchor_row = spec.duration == anchor;
      if (!anchor_row && !out.windows_materialized) continue;
      for (int k = 0; k < f; ++k) {
        Constraint row = detail::window_row(var_of_slot, f, k, spec.duration, spec.demand);
        row.name = "window_" + std::to_string(i) + "_" + std::to_string(k + 1) + "_" +
                   std::to_string(spec.duration);
        model.add_constraint(std::move(row), !anchor_row);
      }
    }
  }
  return out;
}

SolveResult solve_direct(const ProblemInstance& instance, const IlpBuildOptions& build,
                         const IlpSolveOptions& solve) {
  const auto started = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  };
  instance.validate();
  const int f = instance.frame_size;
  const int n = instance.client_count();

  SolveResult result;
  int lower = 0;
  for (const auto& c : instance.clients) lower += min_slots(c, f);
  if (lower > f) {
    result.status = SolveStatus::kInfeasible;
    result.best_bound = kInfinity;
    result.stats["presolve_infeasible"] = 1;
    result.seconds = elapsed();
    return result;
  }

  IlpModel ilp = build_ilp(instance, build);
  std::vector<std::vector<detail::WindowSpec>> specs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    specs[static_cast<std::size_t>(i)] =
        detail::window_specs(instance.client(i), f, build.prune_below_latency,
                             build.latency_dominated_single_point);
  }

  MipOptions options;
  options.time_limit_s = solve.time_limit_s;
  options.relative_gap = solve.relative_gap;
  options.objective_step = 1.0 / f;
  options.cutoff = solve.cutoff;
  if (!ilp.windows_materialized) {
    options.lazy = [&](std::span<const double> x, bool) {
      std::vector<Constraint> rows;
      std::vector<double> values(static_cast<std::size_t>(f));
      for (int i = 0; i < n; ++i) {
        for (int s = 0; s < f; ++s) {
          values[static_cast<std::size_t>(s)] = x[static_cast<std::size_t>(ilp.var(i, s))];
        }
        auto var_of_slot = [&ilp, i](int slot) { return ilp.var(i, slot); };
        for (const auto& [start, spec] :
             detail::violated_windows(values, specs[static_cast<std::size_t>(i)], 1e-7)) {
          rows.push_back(detail::window_row(var_of_slot, f, start, spec.duration, spec.demand));
        }
      }
      return rows;
    };
  }
  if (solve.warm_start && solve.warm_start->frame_size() == f) {
    std::vector<double> x(static_cast<std::size_t>(ilp.model.variable_count()), 0.0);
    for (int s = 0; s < f; ++s) {
      const int c = solve.warm_start->at(s);
      if (c >= 0 && c < n) x[static_cast<std::size_t>(ilp.var(c, s))] = 1.0;
    }
    options.initial_solution = std::move(x);
  }

  const MipSolution mip = solve_mip(ilp.model, options);
  result.stats["nodes"] = static_cast<double>(mip.nodes);
  result.stats["lp_iterations"] = static_cast<double>(mip.lp_iterations);
  result.stats["lazy_rows"] = mip.lazy_rows;
  result.stats["pool_rows"] = mip.pool_rows;
  result.best_bound = mip.best_bound;
  if (std::isfinite(mip.best_bound)) {
    result.best_bound = std::ceil(mip.best_bound * f - 1e-6) / f;
  }
  switch (mip.status) {
    case MipStatus::kOptimal:
      result.status = SolveStatus::kOptimal;
      break;
    case MipStatus::kFeasible:
      result.status = SolveStatus::kFeasible;
      break;
    case MipStatus::kInfeasible:
      result.status = SolveStatus::kInfeasible;
      break;
    case MipStatus::kTimedOut:
      result.status = SolveStatus::kTimedOut;
      break;
  }
  if (!mip.assignment.empty()) {
    Schedule schedule(f);
    for (int i = 0; i < n; ++i) {
      for (int s = 0; s < f; ++s) {
        if (mip.assignment[static_cast<std::size_t>(ilp.var(i, s))] > 0.5) schedule.assign(s, i);
      }
    }
    result.objective = Rational(schedule.allocated_total(), f);
    result.schedule = std::move(schedule);
  }
  result.seconds = elapsed();
  detail::log()->debug("ilp: {} objective {} after {} nodes in {:.3f}s",
                       to_string(result.status),
                       result.objective ? format_rational(*result.objective) : "-",
                       mip.nodes, result.seconds);
  return result;
}

}  // namespace tdm
