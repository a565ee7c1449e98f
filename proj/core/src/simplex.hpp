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

#ifndef TDM_SRC_SIMPLEX_HPP_
#define TDM_SRC_SIMPLEX_HPP_

// Bounded dual simplex over rows a.x - s = 0, one logical s per row whose
// bounds carry the row sense. The basis inverse is kept dense and explicit:
// models here have at most a few thousand rows and are rebuilt often, so the
// simplicity beats a factored representation.

#include <chrono>
#include <cstdint>
#include <span>
#include <vector>

#include "tdm/lp.hpp"

namespace tdm::detail {

using Clock = std::chrono::steady_clock;

class DualSimplex {
 public:
  explicit DualSimplex(int structurals);

  int structurals() const { return n_; }
  int rows() const { return m_; }

  void set_cost(int var, double cost) { cost_[static_cast<std::size_t>(var)] = cost; }
  void set_bounds(int var, double lower, double upper);
  double lower(int var) const { return lo_[static_cast<std::size_t>(var)]; }
  double upper(int var) const { return up_[static_cast<std::size_t>(var)]; }

  // The new row's logical enters the basis, so the current basis stays dual
  // feasible and the next solve() resumes from it.
  int add_row(std::span<const Term> terms, Sense sense, double rhs);

  LpStatus solve(Clock::time_point deadline, long max_iterations);

  double objective() const;
  std::vector<double> primal() const;  // structural values only
  double value(int var) const { return x_[static_cast<std::size_t>(var)]; }
  std::vector<double> duals() const;
  std::vector<double> reduced_costs() const;  // structural only
  long iterations() const { return iterations_; }

 private:
  enum class State : std::uint8_t { kBasic, kLower, kUpper };

  std::size_t total() const { return static_cast<std::size_t>(n_ + m_); }
  double& binv(int row, int col) {
    return binv_[static_cast<std::size_t>(row) * cap_ + static_cast<std::size_t>(col)];
  }
  double binv(int row, int col) const {
    return binv_[static_cast<std::size_t>(row) * cap_ + static_cast<std::size_t>(col)];
  }
  double work_lower(std::size_t j) const;
  double work_upper(std::size_t j) const;
  bool artificial_at_bound(std::size_t j) const;

  int reinvert_interval() const;
  void reserve_rows(int rows);
  void reinvert();
  void compute_primal();
  void compute_duals();
  void place_nonbasic();
  void perturb_costs();
  bool restore_costs();  // true when bound flips left the primal to repair
  void column_ftran(std::size_t j, std::vector<double>& out) const;
  double row_dot(const std::vector<double>& rho, std::size_t j) const;
  void pivot(int row, std::size_t entering, const std::vector<double>& column,
             double theta, double leaving_bound);

  int n_ = 0;
  int m_ = 0;
  std::size_t cap_ = 0;
  std::vector<std::vector<Term>> cols_;  // structural columns, row-indexed
  std::vector<double> cost_, lo_, up_, x_, d_;
  std::vector<double> original_cost_;  // non-empty while costs are perturbed
  std::vector<State> state_;
  std::vector<int> head_;  // basic variable of each row
  std::vector<double> binv_;
  std::vector<double> weight_;  // squared norms of the rows of binv
  std::vector<int> nonzeros_;
  long iterations_ = 0;
  int since_reinvert_ = 0;
  bool fresh_ = true;
};

}  // namespace tdm::detail

#endif  // TDM_SRC_SIMPLEX_HPP_
