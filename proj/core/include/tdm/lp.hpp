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

#ifndef TDM_LP_HPP_
#define TDM_LP_HPP_

// Small linear / binary programming kernel: a model container, an LP solver
// returning dual prices, and branch-and-bound with lazy rows (see mip.hpp).
//
// Dual convention: for the minimization, the reduced cost of variable v is
// cost(v) - sum_c dual(c) * coef(c, v). Hence a binding >= row has a
// non-negative dual and a binding <= row a non-positive one.

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace tdm {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

struct Term {
  int var = 0;
  double coef = 0.0;
};

struct Variable {
  double lower = 0.0;
  double upper = kInfinity;
  double cost = 0.0;
  bool integer = false;
  std::string name;
};

struct Constraint {
  std::vector<Term> terms;
  Sense sense = Sense::kGreaterEqual;
  double rhs = 0.0;
  std::string name;

  // Activity of the row at a point.
  double activity(const std::vector<double>& x) const;
  // Amount by which the point violates the row; zero when satisfied.
  double violation(const std::vector<double>& x) const;
};

class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class LinearModel {
 public:
  int add_variable(Variable v);
  int add_binary(double cost, std::string name = {});
  // Rows flagged as pool rows are held back by solve_mip and only enter the
  // relaxation once a candidate violates them. solve_lp treats them as
  // ordinary rows.
  int add_constraint(Constraint c, bool pool = false);

  int variable_count() const { return static_cast<int>(variables_.size()); }
  int constraint_count() const { return static_cast<int>(constraints_.size()); }
  const std::vector<Variable>& variables() const { return variables_; }
  Variable& variable(int index) { return variables_.at(static_cast<std::size_t>(index)); }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  bool is_pool(int row) const { return pool_.at(static_cast<std::size_t>(row)); }

  double objective_offset() const { return offset_; }
  void set_objective_offset(double offset) { offset_ = offset; }

  double objective(const std::vector<double>& x) const;

  // Throws ModelError on dangling variable references, NaN data, inverted
  // bounds, or integer variables with infinite bounds.
  void validate() const;

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  std::vector<bool> pool_;
  double offset_ = 0.0;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

std::string to_string(LpStatus status);

struct LpOptions {
  int max_iterations = 1'000'000;
  double time_limit_s = kInfinity;
};

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> primal;
  std::vector<double> duals;  // one per constraint
  std::vector<double> reduced_costs;
  long iterations = 0;
};

// Deterministic for a fixed model.
LpSolution solve_lp(const LinearModel& model, const LpOptions& options = {});

}  // namespace tdm

#endif  // TDM_LP_HPP_
