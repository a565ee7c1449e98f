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

#include "tdm/bnp.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <numeric>

#include "log.hpp"
#include "tdm/heuristics.hpp"
#include "tdm/verify.hpp"

namespace tdm {

std::string to_string(Branching branching) {
  return branching == Branching::kSequential ? "sequential" : "max-probability";
}

std::pair<double, double> default_completion_thresholds(int clients) {
  struct Point {
    double n, positive, negative;
  };
  static constexpr std::array<Point, 5> kPoints{{{8, 0.10, 0.40},
                                                 {16, 0.30, 1.00},
                                                 {32, 0.60, 1.20},
                                                 {64, 0.80, 2.60},
                                                 {128, 0.95, 3.00}}};
  const double n = clients;
  if (n <= kPoints.front().n) return {kPoints.front().positive, kPoints.front().negative};
  if (n >= kPoints.back().n) return {kPoints.back().positive, kPoints.back().negative};
  for (std::size_t i = 1; i < kPoints.size(); ++i) {
    if (n <= kPoints[i].n) {
      const auto& a = kPoints[i - 1];
      const auto& b = kPoints[i];
      const double t = (n - a.n) / (b.n - a.n);
      return {a.positive + t * (b.positive - a.positive),
              a.negative + t * (b.negative - a.negative)};
    }
  }
  return {kPoints.back().positive, kPoints.back().negative};
}

std::vector<int> latency_order(const ProblemInstance& instance) {
  std::vector<int> order(static_cast<std::size_t>(instance.client_count()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return instance.latency_bound(a) < instance.latency_bound(b);
  });
  return order;
}

std::optional<std::pair<int, int>> branch_sequential(const DecisionSet& decisions,
                                                     const std::vector<int>& order) {
  for (int client : order) {
    for (int s = 0; s < decisions.frame_size(); ++s) {
      if (!decisions.decided(client, s)) return std::pair{client, s};
    }
  }
  return std::nullopt;
}

std::optional<std::pair<int, int>> branch_max_probability(const DecisionSet& decisions,
                                                          const MasterSolution& master,
                                                          const ColumnPool& pool,
                                                          const std::vector<int>& order) {
  constexpr double kTol = 1e-9;
  const int f = decisions.frame_size();
  for (int client : order) {
    std::vector<double> total(static_cast<std::size_t>(f), 0.0);
    const auto& columns = pool.columns(client);
    const auto& weights = master.weights[static_cast<std::size_t>(client)];
    for (std::size_t k = 0; k < columns.size() && k < weights.size(); ++k) {
      if (weights[k] <= kTol) continue;
      for (int s : columns[k].slots()) total[static_cast<std::size_t>(s)] += weights[k];
    }
    int best = -1;
    for (int s = 0; s < f; ++s) {
      if (decisions.decided(client, s)) continue;
      const double v = total[static_cast<std::size_t>(s)];
      if (v <= kTol) continue;
      if (best < 0 || v > total[static_cast<std::size_t>(best)] + kTol) best = s;
    }
    if (best >= 0) return std::pair{client, best};
  }
  return std::nullopt;
}

SolveResult complete_with_ilp(const DecisionSet& decisions, const ProblemInstance& instance,
                              double time_limit_s, double cutoff) {
  IlpBuildOptions build;
  build.fix_first_slot = false;
  build.partial_fixings = decisions.fixings();
  IlpSolveOptions solve;
  solve.time_limit_s = time_limit_s;
  solve.cutoff = cutoff;
  return solve_direct(instance, build, solve);
}

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kCompletionShare = 0.2;
constexpr double kMinCompletionSeconds = 2.0;

struct OpenNode {
  DecisionSet decisions;
  std::vector<SlotFixing> path;
  double bound = -kInfinity;  // parent's lower bound
};

bool all_bandwidth_dominated(const ProblemInstance& instance) {
  for (const auto& c : instance.clients) {
    if (c.rate > Rational(0) &&
        dominance_class(c, instance.frame_size) != Dominance::kBandwidth) {
      return false;
    }
  }
  return true;
}

class BranchAndPrice {
 public:
  BranchAndPrice(const ProblemInstance& instance, const BnpConfig& config,
                 std::vector<NodeRecord>* log)
      : instance_(instance),
        config_(config),
        log_(log),
        n_(instance.client_count()),
        f_(instance.frame_size),
        pool_(n_, f_),
        order_(latency_order(instance)),
        started_(Clock::now()) {
    branching_ = config.branching.value_or(n_ <= 16 ? Branching::kSequential
                                                    : Branching::kMaxProbability);
    const auto defaults = default_completion_thresholds(n_);
    positive_pct_ = config.completion_positive_pct.value_or(defaults.first);
    negative_pct_ = config.completion_negative_pct.value_or(defaults.second);
    deadline_ = Clock::time_point::max();
    if (std::isfinite(config.time_limit_s)) {
      deadline_ = started_ + std::chrono::duration_cast<Clock::duration>(
                                 std::chrono::duration<double>(config.time_limit_s));
    }
  }

  SolveResult run();

 private:
  double remaining() const {
    if (deadline_ == Clock::time_point::max()) return kInfinity;
    return std::max(0.0, std::chrono::duration<double>(deadline_ - Clock::now()).count());
  }
  bool prunable(double bound) const {
    return incumbent_ && bound > incumbent_value() - 1.0 / f_ + 1e-6;
  }
  double incumbent_value() const {
    return incumbent_ ? to_double(Rational(incumbent_->allocated_total(), f_)) : kInfinity;
  }
  bool offer(const Schedule& schedule);
  void warm_start(int root_client);
  bool ensure_columns(const DecisionSet& decisions);
  void record(NodeRecord rec) {
    if (log_) log_->push_back(std::move(rec));
  }

  const ProblemInstance& instance_;
  const BnpConfig& config_;
  std::vector<NodeRecord>* log_;
  int n_;
  int f_;
  ColumnPool pool_;
  std::vector<int> order_;
  Clock::time_point started_;
  Clock::time_point deadline_;
  Branching branching_;
  double positive_pct_ = 0.0;
  double negative_pct_ = 0.0;
  std::optional<Schedule> incumbent_;
  std::map<std::string, double> stats_;
};

bool BranchAndPrice::offer(const Schedule& schedule) {
  if (!schedule_feasible(schedule, instance_).feasible) {
    detail::log()->warn("bnp: candidate schedule failed verification");
    return false;
  }
  if (incumbent_ && schedule.allocated_total() >= incumbent_->allocated_total()) return false;
  incumbent_ = schedule;
  stats_["incumbent_updates"] += 1;
  detail::log()->debug("bnp: incumbent {}/{}", schedule.allocated_total(), f_);
  return true;
}

void BranchAndPrice::warm_start(int root_client) {
  const int runs = config_.heuristic_runs.value_or(all_bandwidth_dominated(instance_) ? 1 : 8);
  stats_["heuristic_runs"] = runs;
  for (int r = 0; r < runs; ++r) {
    HeuristicConfig hc;
    hc.seed = config_.seed + static_cast<std::uint64_t>(r);
    hc.time_limit_s = remaining();
    const SolveResult h = generative(instance_, hc);
    if (!h.schedule) continue;
    // Rotate so the root client holds slot 0, matching the root decision.
    Schedule s = *h.schedule;
    for (int slot = 0; slot < f_; ++slot) {
      if (s.at(slot) == root_client) {
        s = s.rotated(-slot);
        break;
      }
    }
    if (offer(s)) {
      for (int i = 0; i < n_; ++i) pool_.add(i, s.mask(i));
    }
  }
}

bool BranchAndPrice::ensure_columns(const DecisionSet& decisions) {
  DualPrices zero;
  zero.lambda.assign(static_cast<std::size_t>(f_), 0.0);
  zero.sigma.assign(static_cast<std::size_t>(n_), 0.0);
  for (int i = 0; i < n_; ++i) {
    bool any = false;
    for (const auto& mask : pool_.columns(i)) {
      if (decisions.admits(i, mask)) {
        any = true;
        break;
      }
    }
    if (any) continue;
    const PricingResult p = price_client(instance_, i, zero, decisions, 0.0, remaining());
    if (!p.column) return false;
    pool_.add(i, *p.column);
  }
  return true;
}

SolveResult BranchAndPrice::run() {
  SolveResult result;
  auto finish = [&](SolveStatus status, double bound) {
    result.status = status;
    result.best_bound = bound;
    if (incumbent_) {
      result.schedule = incumbent_;
      result.objective = Rational(incumbent_->allocated_total(), f_);
    }
    result.stats = stats_;
    result.stats["columns"] = pool_.size();
    result.seconds = std::chrono::duration<double>(Clock::now() - started_).count();
    return result;
  };

  int lower = 0;
  for (const auto& c : instance_.clients) lower += min_slots(c, f_);
  if (lower > f_) return finish(SolveStatus::kInfeasible, kInfinity);

  int root_client = -1;
  for (int c : order_) {
    if (min_slots(instance_.client(c), f_) >= 1) {
      root_client = c;
      break;
    }
  }
  if (root_client < 0) {
    incumbent_ = Schedule(f_);
    return finish(SolveStatus::kOptimal, 0.0);
  }

  warm_start(root_client);
  OpenNode root{DecisionSet(n_, f_), {}, -kInfinity};
  root.decisions.allocate(root_client, 0);
  root.path.push_back({root_client, 0, true});
  std::vector<OpenNode> stack;
  stack.push_back(std::move(root));
  bool stopped = false;
  double open_bound = kInfinity;

  while (!stack.empty()) {
    OpenNode node = std::move(stack.back());
    stack.pop_back();
    if (Clock::now() > deadline_) {
      open_bound = std::min(open_bound, node.bound);
      stopped = true;
      break;
    }
    if (prunable(node.bound)) {
      stats_["nodes_pruned"] += 1;
      continue;
    }
    stats_["nodes_opened"] += 1;
    NodeRecord rec;
    rec.decisions = node.path;

    const int positives = node.decisions.positive_count() - 1;
    const int negatives = node.decisions.negative_count();
    if (config_.completion && (positives >= positive_pct_ * f_ || negatives >= negative_pct_ * f_)) {
      stats_["completions"] += 1;
      const double budget = std::min(remaining(), std::max(kMinCompletionSeconds,
                                                           kCompletionShare * remaining()));
      const double cutoff = incumbent_value();
      const SolveResult done = complete_with_ilp(node.decisions, instance_, budget, cutoff);
      if (done.schedule) offer(*done.schedule);
      const bool closed =
          done.status == SolveStatus::kOptimal || done.status == SolveStatus::kInfeasible;
      if (closed || remaining() <= 0) {
        rec.outcome = "completed " + to_string(done.status);
        rec.lower_bound = done.status == SolveStatus::kInfeasible
                              ? std::min(done.best_bound, cutoff)
                              : done.best_bound;
        rec.upper_bound = incumbent_value();
        record(std::move(rec));
        if (!closed) {
          open_bound = std::min(open_bound, std::max(node.bound, done.best_bound));
          stopped = true;
          break;
        }
        continue;
      }
      stats_["completions_abandoned"] += 1;
    }

    if (!ensure_columns(node.decisions)) {
      rec.outcome = "infeasible";
      record(std::move(rec));
      continue;
    }
    ColgenOptions co;
    co.upper_bound = incumbent_value();
    co.lagrangian_every = config_.lagrangian_every;
    co.early_stop = config_.lagrangian_early_stop;
    co.add_policy = config_.add_policy;
    co.deadline = deadline_;
    const ColgenResult cg = column_generation(pool_, node.decisions, instance_, co);
    stats_["colgen_iterations"] += cg.iterations;
    stats_["columns_generated"] += cg.columns_added;
    for (const auto& it : cg.trace) {
      if (it.lagrangian_bound) rec.lagrangian_bounds.push_back(*it.lagrangian_bound);
    }
    if (cg.status == ColgenStatus::kTimedOut) {
      open_bound = std::min(open_bound, std::max(node.bound, cg.lower_bound));
      stopped = true;
      rec.outcome = "timed out";
      record(std::move(rec));
      break;
    }
    if (cg.status == ColgenStatus::kInfeasible) {
      rec.outcome = "infeasible";
      record(std::move(rec));
      continue;
    }
    if (cg.status == ColgenStatus::kConverged) rec.converged_bound = cg.lower_bound;
    const double bound = std::max(node.bound, cg.lower_bound);
    rec.lower_bound = bound;

    const std::optional<Schedule> integral = integral_schedule(cg.master, pool_);
    if (integral) offer(*integral);
    rec.upper_bound = incumbent_value();
    // Any feasible schedule costs at most 1, so a larger bound means the
    // master can only be satisfied by over-allocating.
    if (bound > 1.0 + 1e-6) {
      rec.outcome = "infeasible";
      record(std::move(rec));
      continue;
    }
    if (prunable(bound)) {
      stats_["nodes_pruned"] += 1;
      rec.pruned_by_bound = true;
      rec.outcome = "pruned";
      record(std::move(rec));
      continue;
    }
    if (integral && cg.status == ColgenStatus::kConverged) {
      rec.outcome = "integral";
      record(std::move(rec));
      continue;
    }

    std::optional<std::pair<int, int>> pick;
    if (branching_ == Branching::kMaxProbability) {
      pick = branch_max_probability(node.decisions, cg.master, pool_, order_);
    }
    if (!pick) pick = branch_sequential(node.decisions, order_);
    if (!pick) {
      rec.outcome = "fully decided";
      record(std::move(rec));
      continue;
    }
    rec.outcome = "branched";
    record(std::move(rec));
    const auto [client, slot] = *pick;
    OpenNode forbid{node.decisions, node.path, bound};
    forbid.decisions.forbid(client, slot);
    forbid.path.push_back({client, slot, false});
    OpenNode allocate{std::move(node.decisions), std::move(node.path), bound};
    allocate.decisions.allocate(client, slot);
    allocate.path.push_back({client, slot, true});
    // The child explored first goes on top of the stack.
    if (branching_ == Branching::kSequential) {
      stack.push_back(std::move(allocate));
      stack.push_back(std::move(forbid));
    } else {
      stack.push_back(std::move(forbid));
      stack.push_back(std::move(allocate));
    }
  }

  if (stopped) {
    for (const auto& open : stack) open_bound = std::min(open_bound, open.bound);
    const double bound = std::min(open_bound, incumbent_value());
    return finish(incumbent_ ? SolveStatus::kFeasible : SolveStatus::kTimedOut,
                  std::isfinite(bound) ? std::ceil(bound * f_ - 1e-6) / f_ : bound);
  }
  if (!incumbent_) return finish(SolveStatus::kInfeasible, kInfinity);
  return finish(SolveStatus::kOptimal, incumbent_value());
}

}  // namespace

SolveResult solve_bnp(const ProblemInstance& instance, const BnpConfig& config,
                      std::vector<NodeRecord>* log) {
  instance.validate();
  BranchAndPrice search(instance, config, log);
  return search.run();
}

}  // namespace tdm
