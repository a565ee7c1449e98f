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

#include "tdm/colgen.hpp"

#include <cmath>

#include "log.hpp"
#include "tdm/mip.hpp"
#include "windows.hpp"

namespace tdm {

DecisionSet::DecisionSet(int clients, int frame_size)
    : frame_(frame_size),
      allocated_(static_cast<std::size_t>(clients), SlotMask(frame_size)),
      forbidden_(static_cast<std::size_t>(clients), SlotMask(frame_size)),
      owner_(static_cast<std::size_t>(frame_size), -1) {}

bool DecisionSet::allocate(int client, int slot) {
  if (forbidden_[idx(client)].test(slot)) return false;
  const int owner = owner_[static_cast<std::size_t>(slot)];
  if (owner == client) return true;
  if (owner != -1) return false;
  allocated_[idx(client)].set(slot);
  owner_[static_cast<std::size_t>(slot)] = client;
  ++positives_;
  return true;
}

bool DecisionSet::forbid(int client, int slot) {
  if (allocated_[idx(client)].test(slot)) return false;
  if (forbidden_[idx(client)].test(slot)) return true;
  forbidden_[idx(client)].set(slot);
  ++negatives_;
  return true;
}

bool DecisionSet::decided(int client, int slot) const {
  return owner_[static_cast<std::size_t>(slot)] != -1 || forbidden_[idx(client)].test(slot);
}

bool DecisionSet::is_forbidden(int client, int slot) const {
  const int owner = owner_[static_cast<std::size_t>(slot)];
  return forbidden_[idx(client)].test(slot) || (owner != -1 && owner != client);
}

SlotMask DecisionSet::blocked(int client) const {
  SlotMask out = forbidden_[idx(client)];
  for (int s = 0; s < frame_; ++s) {
    const int owner = owner_[static_cast<std::size_t>(s)];
    if (owner != -1 && owner != client) out.set(s);
  }
  return out;
}

bool DecisionSet::admits(int client, const SlotMask& mask) const {
  for (int s = 0; s < frame_; ++s) {
    const bool used = mask.test(s);
    if (used && is_forbidden(client, s)) return false;
    if (!used && allocated_[idx(client)].test(s)) return false;
  }
  return true;
}

std::vector<SlotFixing> DecisionSet::fixings() const {
  std::vector<SlotFixing> out;
  for (int c = 0; c < clients(); ++c) {
    for (int s : allocated_[idx(c)].slots()) out.push_back({c, s, true});
  }
  for (int c = 0; c < clients(); ++c) {
    for (int s : forbidden_[idx(c)].slots()) out.push_back({c, s, false});
  }
  return out;
}

ColumnPool::ColumnPool(int clients, int frame_size)
    : frame_(frame_size),
      columns_(static_cast<std::size_t>(clients)),
      seen_(static_cast<std::size_t>(clients)) {}

bool ColumnPool::add(int client, const SlotMask& mask) {
  if (mask.size() != frame_) throw std::invalid_argument("column has the wrong frame size");
  if (!seen_[static_cast<std::size_t>(client)].insert(mask).second) return false;
  columns_[static_cast<std::size_t>(client)].push_back(mask);
  return true;
}

int ColumnPool::size() const {
  int total = 0;
  for (const auto& c : columns_) total += static_cast<int>(c.size());
  return total;
}

MasterModel build_master(const ColumnPool& pool, const DecisionSet& decisions) {
  const int n = pool.clients();
  const int f = pool.frame_size();
  MasterModel out;
  auto& model = out.model;
  std::vector<Constraint> capacity(static_cast<std::size_t>(f));
  std::vector<Constraint> convexity(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto& columns = pool.columns(i);
    for (int k = 0; k < static_cast<int>(columns.size()); ++k) {
      const SlotMask& mask = columns[static_cast<std::size_t>(k)];
      if (!decisions.admits(i, mask)) continue;
      const int var = model.add_variable(
          {0.0, kInfinity, static_cast<double>(mask.count()) / f, false,
           "w_" + std::to_string(i) + "_" + std::to_string(k)});
      out.column_of_var.emplace_back(i, k);
      for (int s : mask.slots()) capacity[static_cast<std::size_t>(s)].terms.push_back({var, 1.0});
      convexity[static_cast<std::size_t>(i)].terms.push_back({var, 1.0});
    }
    if (convexity[static_cast<std::size_t>(i)].terms.empty()) {
      throw NodeInfeasible("client " + std::to_string(i) + " has no admissible column");
    }
  }
  out.overalloc_var = model.variable_count();
  for (int s = 0; s < f; ++s) {
    const int var = model.add_variable(
        {0.0, kInfinity, kOverallocationPenalty, false, "y_" + std::to_string(s + 1)});
    capacity[static_cast<std::size_t>(s)].terms.push_back({var, -1.0});
  }
  out.capacity_row = model.constraint_count();
  for (int s = 0; s < f; ++s) {
    auto& row = capacity[static_cast<std::size_t>(s)];
    row.sense = Sense::kLessEqual;
    row.rhs = 1.0;
    row.name = "capacity_" + std::to_string(s + 1);
    model.add_constraint(std::move(row));
  }
  out.convexity_row = model.constraint_count();
  for (int i = 0; i < n; ++i) {
    auto& row = convexity[static_cast<std::size_t>(i)];
    row.sense = Sense::kGreaterEqual;
    row.rhs = 1.0;
    row.name = "convexity_" + std::to_string(i);
    model.add_constraint(std::move(row));
  }
  return out;
}

DualPrices extract_duals(const LpSolution& lp, const MasterModel& master, int clients,
                         int frame_size) {
  if (lp.status != LpStatus::kOptimal) {
    throw std::invalid_argument("duals requested from a non-optimal master");
  }
  DualPrices out;
  out.lambda.resize(static_cast<std::size_t>(frame_size));
  out.sigma.resize(static_cast<std::size_t>(clients));
  for (int s = 0; s < frame_size; ++s) {
    const double v = -lp.duals[static_cast<std::size_t>(master.capacity_row + s)];
    out.lambda[static_cast<std::size_t>(s)] = std::max(0.0, v);
  }
  for (int i = 0; i < clients; ++i) {
    out.sigma[static_cast<std::size_t>(i)] =
        lp.duals[static_cast<std::size_t>(master.convexity_row + i)];
  }
  return out;
}

std::optional<Schedule> integral_schedule(const MasterSolution& master,
                                          const ColumnPool& pool) {
  constexpr double kTol = 1e-6;
  for (double y : master.overalloc) {
    if (y > kTol) return std::nullopt;
  }
  std::vector<SlotMask> chosen;
  for (int i = 0; i < pool.clients(); ++i) {
    const auto& weights = master.weights[static_cast<std::size_t>(i)];
    int pick = -1;
    for (int k = 0; k < static_cast<int>(weights.size()); ++k) {
      const double w = weights[static_cast<std::size_t>(k)];
      if (w > kTol && std::abs(w - 1.0) > kTol) return std::nullopt;
      if (w > 1.0 - kTol) {
        if (pick >= 0) return std::nullopt;
        pick = k;
      }
    }
    if (pick < 0) return std::nullopt;
    chosen.push_back(pool.columns(i)[static_cast<std::size_t>(pick)]);
  }
  for (std::size_t a = 0; a < chosen.size(); ++a) {
    for (std::size_t b = a + 1; b < chosen.size(); ++b) {
      if (chosen[a].intersects(chosen[b])) return std::nullopt;
    }
  }
  return Schedule::from_masks(chosen);
}

PricingResult price_client(const ProblemInstance& instance, int client,
                           const DualPrices& duals, const DecisionSet& decisions,
                           double gap, double time_limit_s) {
  const int f = instance.frame_size;
  const ClientRequirement& req = instance.client(client);
  LinearModel model;
  for (int s = 0; s < f; ++s) {
    Variable v{0.0, 1.0, duals.lambda[static_cast<std::size_t>(s)] + 1.0 / f, true,
               "x_" + std::to_string(s + 1)};
    if (decisions.is_allocated(client, s)) v.lower = 1.0;
    if (decisions.is_forbidden(client, s)) v.upper = 0.0;
    model.add_variable(std::move(v));
  }
  model.set_objective_offset(-duals.sigma[static_cast<std::size_t>(client)]);
  if (const int slots = min_slots(req, f); slots > 0) {
    Constraint row;
    row.sense = Sense::kGreaterEqual;
    row.rhs = slots;
    for (int s = 0; s < f; ++s) row.terms.push_back({s, 1.0});
    model.add_constraint(std::move(row));
  }
  const std::vector<detail::WindowSpec> specs = detail::window_specs(req, f, true, true);
  const int anchor = detail::single_point_duration(req, f);
  auto identity = [](int slot) { return slot; };
  for (const auto& spec : specs) {
    if (spec.duration != anchor) continue;
    for (int k = 0; k < f; ++k) {
      model.add_constraint(detail::window_row(identity, f, k, spec.duration, spec.demand));
    }
  }

  MipOptions options;
  options.relative_gap = gap;
  options.time_limit_s = time_limit_s;
  options.lazy = [&](std::span<const double> x, bool) {
    std::vector<Constraint> rows;
    for (const auto& [start, spec] : detail::violated_windows(x, specs, 1e-7)) {
      rows.push_back(detail::window_row(identity, f, start, spec.duration, spec.demand));
    }
    return rows;
  };
  const MipSolution mip = solve_mip(model, options);

  PricingResult out;
  switch (mip.status) {
    case MipStatus::kOptimal:
      out.status = PricingStatus::kOptimal;
      break;
    case MipStatus::kFeasible:
      out.status = PricingStatus::kFeasible;
      break;
    case MipStatus::kInfeasible:
      out.status = PricingStatus::kInfeasible;
      return out;
    case MipStatus::kTimedOut:
      out.status = PricingStatus::kTimedOut;
      return out;
  }
  SlotMask mask(f);
  for (int s = 0; s < f; ++s) {
    if (mip.assignment[static_cast<std::size_t>(s)] > 0.5) mask.set(s);
  }
  out.column = mask;
  out.reduced_cost = mip.objective;
  return out;
}

std::string to_string(ColgenStatus status) {
  switch (status) {
    case ColgenStatus::kConverged:
      return "Converged";
    case ColgenStatus::kEarlyStopped:
      return "EarlyStopped";
    case ColgenStatus::kInfeasible:
      return "Infeasible";
    case ColgenStatus::kTimedOut:
      return "TimedOut";
  }
  return "Unknown";
}

namespace {

double seconds_until(std::chrono::steady_clock::time_point deadline) {
  if (deadline == std::chrono::steady_clock::time_point::max()) return kInfinity;
  return std::max(0.0, std::chrono::duration<double>(deadline - std::chrono::steady_clock::now())
                           .count());
}

int slots_of(double objective, int frame_size) {
  return static_cast<int>(std::ceil(objective * frame_size - 1e-6));
}

}  // namespace

ColgenResult column_generation(ColumnPool& pool, const DecisionSet& decisions,
                               const ProblemInstance& instance,
                               const ColgenOptions& options) {
  const int n = instance.client_count();
  const int f = instance.frame_size;
  const int every = options.lagrangian_every > 0 ? options.lagrangian_every : n;
  ColgenResult result;
  while (true) {
    if (std::chrono::steady_clock::now() > options.deadline) {
      result.status = ColgenStatus::kTimedOut;
      return result;
    }
    MasterModel master;
    try {
      master = build_master(pool, decisions);
    } catch (const NodeInfeasible&) {
      result.status = ColgenStatus::kInfeasible;
      return result;
    }
    LpOptions lp_options;
    lp_options.time_limit_s = seconds_until(options.deadline);
    const LpSolution lp = solve_lp(master.model, lp_options);
    if (lp.status == LpStatus::kIterationLimit) {
      result.status = ColgenStatus::kTimedOut;
      return result;
    }
    if (lp.status != LpStatus::kOptimal) {
      throw std::runtime_error("restricted master returned " + to_string(lp.status));
    }

    MasterSolution& ms = result.master;
    ms.objective = lp.objective;
    ms.duals = extract_duals(lp, master, n, f);
    ms.weights.assign(static_cast<std::size_t>(n), {});
    for (int i = 0; i < n; ++i) {
      ms.weights[static_cast<std::size_t>(i)].assign(pool.columns(i).size(), 0.0);
    }
    for (std::size_t v = 0; v < master.column_of_var.size(); ++v) {
      const auto [i, k] = master.column_of_var[v];
      ms.weights[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = lp.primal[v];
    }
    ms.overalloc.assign(lp.primal.begin() + master.overalloc_var, lp.primal.end());
    ++result.iterations;

    ColgenIteration step;
    step.iteration = result.iterations;
    step.master_objective = ms.objective;
    step.reduced_costs.assign(static_cast<std::size_t>(n), std::nullopt);
    std::vector<std::pair<int, SlotMask>> improving;
    bool priced_all = true;
    double reduced_sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const PricingResult priced =
          price_client(instance, i, ms.duals, decisions, 0.0, seconds_until(options.deadline));
      if (priced.status == PricingStatus::kInfeasible) {
        result.status = ColgenStatus::kInfeasible;
        result.trace.push_back(std::move(step));
        return result;
      }
      if (priced.status != PricingStatus::kOptimal) {
        result.status = ColgenStatus::kTimedOut;
        result.trace.push_back(std::move(step));
        return result;
      }
      step.reduced_costs[static_cast<std::size_t>(i)] = priced.reduced_cost;
      reduced_sum += priced.reduced_cost;
      if (priced.reduced_cost < -kReducedCostTol) {
        improving.emplace_back(i, *priced.column);
        if (options.add_policy == AddPolicy::kFirstNegative) {
          priced_all = i == n - 1;
          break;
        }
      }
    }
    detail::log()->debug("colgen: iteration {} master {:.9g} improving {}", result.iterations,
                         ms.objective, improving.size());

    if (improving.empty()) {
      result.status = ColgenStatus::kConverged;
      result.lower_bound = std::max(result.lower_bound, ms.objective);
      result.trace.push_back(std::move(step));
      return result;
    }
    if (priced_all && result.iterations % every == 0) {
      const double estimate = ms.objective + reduced_sum;
      step.lagrangian_bound = estimate;
      result.lower_bound = std::max(result.lower_bound, estimate);
      if (options.early_stop &&
          (estimate >= options.upper_bound - 1e-9 ||
           slots_of(estimate, f) == slots_of(ms.objective, f))) {
        result.status = ColgenStatus::kEarlyStopped;
        result.trace.push_back(std::move(step));
        return result;
      }
    }
    result.trace.push_back(std::move(step));

    int added = 0;
    for (const auto& [i, mask] : improving) {
      if (pool.add(i, mask)) ++added;
    }
    result.columns_added += added;
    if (added == 0) {
      detail::log()->warn("colgen: negative reduced cost on pooled columns only; stopping");
      result.status = ColgenStatus::kConverged;
      result.lower_bound = std::max(result.lower_bound, ms.objective);
      return result;
    }
  }
}

}  // namespace tdm
