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

#include "tdm/mip.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <queue>
#include <stdexcept>

#include "log.hpp"
#include "simplex.hpp"

namespace tdm {

std::string to_string(MipStatus status) {
  switch (status) {
    case MipStatus::kOptimal:
      return "Optimal";
    case MipStatus::kFeasible:
      return "Feasible";
    case MipStatus::kInfeasible:
      return "Infeasible";
    case MipStatus::kTimedOut:
      return "TimedOut";
  }
  return "Unknown";
}

namespace {

constexpr double kFeasTol = 1e-9;
constexpr double kCutTol = 1e-7;  // a row must be violated by this much to count

struct Node {
  std::shared_ptr<const Node> parent;
  int var = -1;
  double lower = 0.0;
  double upper = 0.0;
  double bound = -kInfinity;
  long id = 0;
};

using NodePtr = std::shared_ptr<const Node>;

struct OpenOrder {
  bool operator()(const NodePtr& a, const NodePtr& b) const {
    if (a->bound != b->bound) return a->bound > b->bound;
    return a->id > b->id;
  }
};

class BranchAndBound {
 public:
  BranchAndBound(const LinearModel& model, const MipOptions& options)
      : model_(model), options_(options), engine_(model.variable_count()) {
    const int n = model.variable_count();
    for (int j = 0; j < n; ++j) {
      const auto& v = model.variables()[static_cast<std::size_t>(j)];
      engine_.set_cost(j, v.cost);
      engine_.set_bounds(j, v.lower, v.upper);
      if (v.integer) integers_.push_back(j);
    }
    for (int r = 0; r < model.constraint_count(); ++r) {
      const auto& c = model.constraints()[static_cast<std::size_t>(r)];
      if (model.is_pool(r)) {
        inactive_pool_.push_back(r);
      } else {
        engine_.add_row(c.terms, c.sense, c.rhs);
      }
    }
    deadline_ = detail::Clock::time_point::max();
    if (std::isfinite(options.time_limit_s)) {
      deadline_ = detail::Clock::now() +
                  std::chrono::duration_cast<detail::Clock::duration>(
                      std::chrono::duration<double>(options.time_limit_s));
    }
  }

  MipSolution run();

 private:
  enum class Outcome { kPruned, kIntegral, kBranched, kOutOfTime };

  bool prunable(double bound) const;
  void apply_bounds(const Node* node);
  Outcome process(const NodePtr& node, NodePtr& dive, NodePtr& sibling);
  bool separate_pool(const std::vector<double>& x);
  bool add_lazy_rows(std::vector<Constraint> rows, const std::vector<double>& x);
  bool is_integral(const std::vector<double>& x) const;
  bool satisfies_all(const std::vector<double>& x) const;
  void try_initial();
  void offer_incumbent(std::vector<double> x);

  const LinearModel& model_;
  const MipOptions& options_;
  detail::DualSimplex engine_;
  std::vector<int> integers_;
  std::vector<int> inactive_pool_;
  std::vector<Constraint> lazy_rows_;
  detail::Clock::time_point deadline_;

  bool has_incumbent_ = false;
  double incumbent_value_ = kInfinity;
  std::vector<double> incumbent_;
  double gap_pruned_bound_ = kInfinity;
  long next_id_ = 0;
  long nodes_ = 0;
  int pool_added_ = 0;
};

bool BranchAndBound::prunable(double bound) const {
  const double target = has_incumbent_ ? std::min(incumbent_value_, options_.cutoff)
                                       : options_.cutoff;
  if (!std::isfinite(target)) return false;
  if (bound >= target - 1e-6) return true;
  if (options_.objective_step > 0) {
    // Smallest grid value the subtree could still reach.
    const double step = options_.objective_step;
    const double reachable = std::ceil((bound - 1e-6) / step) * step;
    return reachable >= target - 1e-9;
  }
  return false;
}

void BranchAndBound::apply_bounds(const Node* node) {
  for (int j = 0; j < model_.variable_count(); ++j) {
    const auto& v = model_.variables()[static_cast<std::size_t>(j)];
    engine_.set_bounds(j, v.lower, v.upper);
  }
  std::vector<const Node*> chain;
  for (const Node* p = node; p != nullptr; p = p->parent.get()) {
    if (p->var >= 0) chain.push_back(p);
  }
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    const Node* p = *it;
    const double lo = std::max(engine_.lower(p->var), p->lower);
    const double up = std::min(engine_.upper(p->var), p->upper);
    engine_.set_bounds(p->var, lo, up);
  }
}

bool BranchAndBound::is_integral(const std::vector<double>& x) const {
  for (int j : integers_) {
    const double v = x[static_cast<std::size_t>(j)];
    if (std::abs(v - std::round(v)) > options_.integrality_tol) return false;
  }
  return true;
}

bool BranchAndBound::satisfies_all(const std::vector<double>& x) const {
  for (std::size_t j = 0; j < x.size(); ++j) {
    const auto& v = model_.variables()[j];
    if (x[j] < v.lower - kCutTol || x[j] > v.upper + kCutTol) return false;
  }
  for (const auto& c : model_.constraints()) {
    if (c.violation(x) > kCutTol) return false;
  }
  for (const auto& c : lazy_rows_) {
    if (c.violation(x) > kCutTol) return false;
  }
  return is_integral(x);
}

bool BranchAndBound::separate_pool(const std::vector<double>& x) {
  std::vector<std::pair<double, std::size_t>> violated;
  for (std::size_t k = 0; k < inactive_pool_.size(); ++k) {
    const auto& c = model_.constraints()[static_cast<std::size_t>(inactive_pool_[k])];
    const double v = c.violation(x);
    if (v > kCutTol) violated.emplace_back(-v, k);
  }
  if (violated.empty()) return false;
  const auto batch = std::min<std::size_t>(
      violated.size(), static_cast<std::size_t>(std::max(1, options_.pool_batch)));
  std::partial_sort(violated.begin(), violated.begin() + static_cast<std::ptrdiff_t>(batch),
                    violated.end());
  std::vector<bool> taken(inactive_pool_.size(), false);
  for (std::size_t i = 0; i < batch; ++i) {
    const std::size_t k = violated[i].second;
    const auto& c = model_.constraints()[static_cast<std::size_t>(inactive_pool_[k])];
    engine_.add_row(c.terms, c.sense, c.rhs);
    taken[k] = true;
    ++pool_added_;
  }
  std::vector<int> rest;
  rest.reserve(inactive_pool_.size() - batch);
  for (std::size_t k = 0; k < inactive_pool_.size(); ++k) {
    if (!taken[k]) rest.push_back(inactive_pool_[k]);
  }
  inactive_pool_ = std::move(rest);
  return true;
}

bool BranchAndBound::add_lazy_rows(std::vector<Constraint> rows,
                                   const std::vector<double>& x) {
  bool progress = false;
  for (auto& c : rows) {
    for (const auto& t : c.terms) {
      if (t.var < 0 || t.var >= model_.variable_count()) {
        throw ModelError("lazy row references undeclared variable");
      }
    }
    if (c.violation(x) > kCutTol) progress = true;
    engine_.add_row(c.terms, c.sense, c.rhs);
    lazy_rows_.push_back(std::move(c));
  }
  return progress;
}

void BranchAndBound::offer_incumbent(std::vector<double> x) {
  for (int j : integers_) {
    auto& v = x[static_cast<std::size_t>(j)];
    v = std::round(v);
  }
  const double value = model_.objective(x);
  if (has_incumbent_ && value >= incumbent_value_ - 1e-12) return;
  has_incumbent_ = true;
  incumbent_value_ = value;
  incumbent_ = std::move(x);
  detail::log()->debug("mip: incumbent {:.9g} after {} nodes", value, nodes_);
}

void BranchAndBound::try_initial() {
  if (!options_.initial_solution) return;
  std::vector<double> x = *options_.initial_solution;
  if (static_cast<int>(x.size()) != model_.variable_count()) {
    throw ModelError("initial solution has the wrong length");
  }
  if (!satisfies_all(x)) return;
  if (options_.lazy) {
    auto rows = options_.lazy(x, true);
    if (!rows.empty() && add_lazy_rows(std::move(rows), x)) return;
  }
  offer_incumbent(std::move(x));
}

BranchAndBound::Outcome BranchAndBound::process(const NodePtr& node, NodePtr& dive,
                                                NodePtr& sibling) {
  ++nodes_;
  apply_bounds(node.get());
  while (true) {
    const LpStatus status = engine_.solve(deadline_, 10'000'000);
    if (status == LpStatus::kIterationLimit) return Outcome::kOutOfTime;
    if (status == LpStatus::kInfeasible) return Outcome::kPruned;
    if (status == LpStatus::kUnbounded) {
      throw std::runtime_error("relaxation is unbounded");
    }
    const double bound = engine_.objective() + model_.objective_offset();
    if (prunable(bound)) return Outcome::kPruned;
    const std::vector<double> x = engine_.primal();
    if (separate_pool(x)) continue;
    const bool integral = is_integral(x);
    if (options_.lazy) {
      auto rows = options_.lazy(x, integral);
      if (!rows.empty() && add_lazy_rows(std::move(rows), x)) continue;
    }
    if (integral) {
      offer_incumbent(x);
      return Outcome::kIntegral;
    }
    if (options_.relative_gap > 0 && has_incumbent_ &&
        bound >= incumbent_value_ - options_.relative_gap * std::abs(incumbent_value_)) {
      gap_pruned_bound_ = std::min(gap_pruned_bound_, bound);
      return Outcome::kPruned;
    }

    int var = -1;
    double best = -1.0;
    for (int j : integers_) {
      const double v = x[static_cast<std::size_t>(j)];
      const double frac = v - std::floor(v);
      const double score = std::min(frac, 1.0 - frac);
      if (score > options_.integrality_tol && score > best + 1e-12) {
        best = score;
        var = j;
      }
    }
    const double v = x[static_cast<std::size_t>(var)];
    auto down = std::make_shared<Node>();
    down->parent = node;
    down->var = var;
    down->lower = -kInfinity;
    down->upper = std::floor(v);
    down->bound = bound;
    down->id = ++next_id_;
    auto up = std::make_shared<Node>();
    up->parent = node;
    up->var = var;
    up->lower = std::ceil(v);
    up->upper = kInfinity;
    up->bound = bound;
    up->id = ++next_id_;
    const bool round_up = v - std::floor(v) >= 0.5;
    dive = round_up ? NodePtr(up) : NodePtr(down);
    sibling = round_up ? NodePtr(down) : NodePtr(up);
    return Outcome::kBranched;
  }
}

MipSolution BranchAndBound::run() {
  try_initial();
  std::priority_queue<NodePtr, std::vector<NodePtr>, OpenOrder> open;
  NodePtr current = std::make_shared<Node>();
  bool stopped = false;
  while (true) {
    if (!current) {
      while (!open.empty() && prunable(open.top()->bound)) open.pop();
      if (open.empty()) break;
      current = open.top();
      open.pop();
    }
    if (prunable(current->bound)) {
      current = nullptr;
      continue;
    }
    if (detail::Clock::now() > deadline_ ||
        (options_.node_limit >= 0 && nodes_ >= options_.node_limit)) {
      open.push(current);
      stopped = true;
      break;
    }
    NodePtr dive;
    NodePtr sibling;
    const Outcome outcome = process(current, dive, sibling);
    if (outcome == Outcome::kOutOfTime) {
      open.push(current);
      stopped = true;
      break;
    }
    if (outcome == Outcome::kBranched) {
      open.push(sibling);
      current = dive;
    } else {
      current = nullptr;
    }
  }

  MipSolution out;
  out.nodes = nodes_;
  out.lp_iterations = engine_.iterations();
  out.lazy_rows = static_cast<int>(lazy_rows_.size());
  out.pool_rows = pool_added_;
  double bound = std::min(incumbent_value_, gap_pruned_bound_);
  while (!open.empty()) {
    if (!prunable(open.top()->bound)) bound = std::min(bound, open.top()->bound);
    open.pop();
  }
  out.best_bound = bound;
  if (has_incumbent_) {
    out.objective = incumbent_value_;
    out.assignment = incumbent_;
    out.status = (!stopped && bound >= incumbent_value_ - 1e-9) ? MipStatus::kOptimal
                                                                 : MipStatus::kFeasible;
  } else {
    out.status = stopped ? MipStatus::kTimedOut : MipStatus::kInfeasible;
  }
  return out;
}

}  // namespace

MipSolution solve_mip(const LinearModel& model, const MipOptions& options) {
  model.validate();
  BranchAndBound search(model, options);
  return search.run();
}

}  // namespace tdm
