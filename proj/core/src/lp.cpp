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

#include "tdm/lp.hpp"

#include <cmath>

#include "simplex.hpp"

namespace tdm {

double Constraint::activity(const std::vector<double>& x) const {
  double v = 0.0;
  for (const auto& t : terms) v += t.coef * x[static_cast<std::size_t>(t.var)];
  return v;
}

double Constraint::violation(const std::vector<double>& x) const {
  const double a = activity(x);
  switch (sense) {
    case Sense::kLessEqual:
      return std::max(0.0, a - rhs);
    case Sense::kGreaterEqual:
      return std::max(0.0, rhs - a);
    case Sense::kEqual:
      return std::abs(a - rhs);
  }
  return 0.0;
}

int LinearModel::add_variable(Variable v) {
  variables_.push_back(std::move(v));
  return variable_count() - 1;
}

int LinearModel::add_binary(double cost, std::string name) {
  return add_variable({0.0, 1.0, cost, true, std::move(name)});
}

int LinearModel::add_constraint(Constraint c, bool pool) {
  constraints_.push_back(std::move(c));
  pool_.push_back(pool);
  return constraint_count() - 1;
}

double LinearModel::objective(const std::vector<double>& x) const {
  double v = offset_;
  for (std::size_t j = 0; j < variables_.size(); ++j) v += variables_[j].cost * x[j];
  return v;
}

void LinearModel::validate() const {
  for (std::size_t j = 0; j < variables_.size(); ++j) {
    const auto& v = variables_[j];
    if (std::isnan(v.lower) || std::isnan(v.upper) || !std::isfinite(v.cost)) {
      throw ModelError("variable " + std::to_string(j) + " has invalid data");
    }
    if (v.lower > v.upper) {
      throw ModelError("variable " + std::to_string(j) + " has inverted bounds");
    }
    if (v.integer && (!std::isfinite(v.lower) || !std::isfinite(v.upper))) {
      throw ModelError("integer variable " + std::to_string(j) + " is unbounded");
    }
  }
  for (std::size_t r = 0; r < constraints_.size(); ++r) {
    const auto& c = constraints_[r];
    if (!std::isfinite(c.rhs)) {
      throw ModelError("constraint " + std::to_string(r) + " has invalid rhs");
    }
    for (const auto& t : c.terms) {
      if (t.var < 0 || t.var >= variable_count()) {
        throw ModelError("constraint " + std::to_string(r) +
                         " references undeclared variable " + std::to_string(t.var));
      }
      if (!std::isfinite(t.coef)) {
        throw ModelError("constraint " + std::to_string(r) + " has invalid coefficient");
      }
    }
  }
}

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "Optimal";
    case LpStatus::kInfeasible:
      return "Infeasible";
    case LpStatus::kUnbounded:
      return "Unbounded";
    case LpStatus::kIterationLimit:
      return "IterationLimit";
  }
  return "Unknown";
}

LpSolution solve_lp(const LinearModel& model, const LpOptions& options) {
  model.validate();
  detail::DualSimplex engine(model.variable_count());
  for (int j = 0; j < model.variable_count(); ++j) {
    const auto& v = model.variables()[static_cast<std::size_t>(j)];
    engine.set_cost(j, v.cost);
    engine.set_bounds(j, v.lower, v.upper);
  }
  for (const auto& c : model.constraints()) engine.add_row(c.terms, c.sense, c.rhs);

  auto deadline = detail::Clock::time_point::max();
  if (std::isfinite(options.time_limit_s)) {
    deadline = detail::Clock::now() +
               std::chrono::duration_cast<detail::Clock::duration>(
                   std::chrono::duration<double>(options.time_limit_s));
  }
  LpSolution out;
  out.status = engine.solve(deadline, options.max_iterations);
  out.iterations = engine.iterations();
  if (out.status == LpStatus::kOptimal) {
    out.primal = engine.primal();
    out.duals = engine.duals();
    out.reduced_costs = engine.reduced_costs();
    out.objective = engine.objective() + model.objective_offset();
  }
  return out;
}

}  // namespace tdm
