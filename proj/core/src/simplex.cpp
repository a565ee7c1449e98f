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

#include "simplex.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace tdm::detail {

namespace {

constexpr double kBox = 1e7;           // stand-in for an infinite bound
constexpr double kPrimalTol = 1e-9;
constexpr double kDualTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr int kReinvertEvery = 100;  // minimum; large bases wait m pivots
constexpr int kStallLimit = 50;        // degenerate pivots before perturbing
constexpr double kPerturbation = 1e-7;

// Deterministic value in [1, 2) per column so runs are reproducible.
double perturbation_scale(std::size_t j) {
  std::uint64_t z = j + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return 1.0 + static_cast<double>(z >> 11) * 0x1.0p-53;
}

}  // namespace

DualSimplex::DualSimplex(int structurals)
    : n_(structurals),
      cols_(static_cast<std::size_t>(structurals)),
      cost_(static_cast<std::size_t>(structurals), 0.0),
      lo_(static_cast<std::size_t>(structurals), 0.0),
      up_(static_cast<std::size_t>(structurals), kInfinity),
      x_(static_cast<std::size_t>(structurals), 0.0),
      d_(static_cast<std::size_t>(structurals), 0.0),
      state_(static_cast<std::size_t>(structurals), State::kLower) {}

void DualSimplex::set_bounds(int var, double lower, double upper) {
  lo_[static_cast<std::size_t>(var)] = lower;
  up_[static_cast<std::size_t>(var)] = upper;
}

double DualSimplex::work_lower(std::size_t j) const {
  return std::isfinite(lo_[j]) ? lo_[j] : -kBox;
}

double DualSimplex::work_upper(std::size_t j) const {
  return std::isfinite(up_[j]) ? up_[j] : kBox;
}

bool DualSimplex::artificial_at_bound(std::size_t j) const {
  if (state_[j] == State::kLower) return !std::isfinite(lo_[j]);
  if (state_[j] == State::kUpper) return !std::isfinite(up_[j]);
  return false;
}

int DualSimplex::reinvert_interval() const { return std::max(kReinvertEvery, m_); }

void DualSimplex::reserve_rows(int rows) {
  const auto need = static_cast<std::size_t>(rows);
  if (need <= cap_) return;
  std::size_t cap = std::max<std::size_t>(16, cap_);
  while (cap < need) cap *= 2;
  std::vector<double> grown(cap * cap, 0.0);
  for (std::size_t i = 0; i < static_cast<std::size_t>(m_); ++i) {
    std::copy_n(binv_.begin() + static_cast<std::ptrdiff_t>(i * cap_),
                static_cast<std::size_t>(m_),
                grown.begin() + static_cast<std::ptrdiff_t>(i * cap));
  }
  binv_ = std::move(grown);
  cap_ = cap;
}

int DualSimplex::add_row(std::span<const Term> terms, Sense sense, double rhs) {
  const int row = m_;
  reserve_rows(m_ + 1);
  for (const auto& t : terms) {
    if (t.coef != 0.0) cols_[static_cast<std::size_t>(t.var)].push_back({row, t.coef});
  }
  double lower = -kInfinity;
  double upper = kInfinity;
  if (sense != Sense::kLessEqual) lower = rhs;
  if (sense != Sense::kGreaterEqual) upper = rhs;
  cost_.push_back(0.0);
  lo_.push_back(lower);
  up_.push_back(upper);
  d_.push_back(0.0);
  state_.push_back(State::kBasic);
  double activity = 0.0;
  for (const auto& t : terms) activity += t.coef * x_[static_cast<std::size_t>(t.var)];
  x_.push_back(activity);

  // Last row of the grown inverse: (a restricted to the basis) * B^-1, then -1.
  std::vector<double> basic_coef(static_cast<std::size_t>(m_), 0.0);
  if (m_ > 0) {
    std::vector<double> dense(static_cast<std::size_t>(n_), 0.0);
    for (const auto& t : terms) dense[static_cast<std::size_t>(t.var)] += t.coef;
    for (int i = 0; i < m_; ++i) {
      const int h = head_[static_cast<std::size_t>(i)];
      if (h < n_) basic_coef[static_cast<std::size_t>(i)] = dense[static_cast<std::size_t>(h)];
    }
  }
  for (int k = 0; k < m_; ++k) binv(row, k) = 0.0;
  for (int i = 0; i < m_; ++i) {
    const double a = basic_coef[static_cast<std::size_t>(i)];
    if (a == 0.0) continue;
    for (int k = 0; k < m_; ++k) binv(row, k) += a * binv(i, k);
  }
  for (int i = 0; i < m_; ++i) binv(i, row) = 0.0;
  binv(row, row) = -1.0;
  head_.push_back(n_ + row);
  ++m_;
  double w = 0.0;
  for (int k = 0; k < m_; ++k) w += binv(row, k) * binv(row, k);
  weight_.push_back(w);
  return row;
}

void DualSimplex::column_ftran(std::size_t j, std::vector<double>& out) const {
  out.assign(static_cast<std::size_t>(m_), 0.0);
  if (j < static_cast<std::size_t>(n_)) {
    for (const auto& t : cols_[j]) {
      for (int i = 0; i < m_; ++i) out[static_cast<std::size_t>(i)] += binv(i, t.var) * t.coef;
    }
  } else {
    const int k = static_cast<int>(j) - n_;
    for (int i = 0; i < m_; ++i) out[static_cast<std::size_t>(i)] = -binv(i, k);
  }
}

double DualSimplex::row_dot(const std::vector<double>& rho, std::size_t j) const {
  if (j < static_cast<std::size_t>(n_)) {
    double v = 0.0;
    for (const auto& t : cols_[j]) v += rho[static_cast<std::size_t>(t.var)] * t.coef;
    return v;
  }
  return -rho[j - static_cast<std::size_t>(n_)];
}

void DualSimplex::reinvert() {
  since_reinvert_ = 0;
  if (m_ == 0) return;
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(m_, m_);
  for (int i = 0; i < m_; ++i) {
    const auto h = static_cast<std::size_t>(head_[static_cast<std::size_t>(i)]);
    if (h < static_cast<std::size_t>(n_)) {
      for (const auto& t : cols_[h]) basis(t.var, i) = t.coef;
    } else {
      basis(static_cast<int>(h) - n_, i) = -1.0;
    }
  }
  const Eigen::MatrixXd inverse = basis.partialPivLu().inverse();
  for (int i = 0; i < m_; ++i) {
    double w = 0.0;
    for (int k = 0; k < m_; ++k) {
      binv(i, k) = inverse(i, k);
      w += inverse(i, k) * inverse(i, k);
    }
    weight_[static_cast<std::size_t>(i)] = w;
  }
}

void DualSimplex::compute_primal() {
  std::vector<double> rhs(static_cast<std::size_t>(m_), 0.0);
  for (std::size_t j = 0; j < total(); ++j) {
    if (state_[j] == State::kBasic || x_[j] == 0.0) continue;
    if (j < static_cast<std::size_t>(n_)) {
      for (const auto& t : cols_[j]) rhs[static_cast<std::size_t>(t.var)] -= t.coef * x_[j];
    } else {
      rhs[j - static_cast<std::size_t>(n_)] += x_[j];
    }
  }
  for (int i = 0; i < m_; ++i) {
    double v = 0.0;
    for (int k = 0; k < m_; ++k) v += binv(i, k) * rhs[static_cast<std::size_t>(k)];
    x_[static_cast<std::size_t>(head_[static_cast<std::size_t>(i)])] = v;
  }
}

void DualSimplex::compute_duals() {
  const std::vector<double> y = duals();
  for (std::size_t j = 0; j < total(); ++j) {
    if (state_[j] == State::kBasic) {
      d_[j] = 0.0;
    } else if (j < static_cast<std::size_t>(n_)) {
      double v = cost_[j];
      for (const auto& t : cols_[j]) v -= y[static_cast<std::size_t>(t.var)] * t.coef;
      d_[j] = v;
    } else {
      d_[j] = y[j - static_cast<std::size_t>(n_)];
    }
  }
}

std::vector<double> DualSimplex::duals() const {
  std::vector<double> y(static_cast<std::size_t>(m_), 0.0);
  for (int i = 0; i < m_; ++i) {
    const double c = cost_[static_cast<std::size_t>(head_[static_cast<std::size_t>(i)])];
    if (c == 0.0) continue;
    for (int k = 0; k < m_; ++k) y[static_cast<std::size_t>(k)] += c * binv(i, k);
  }
  return y;
}

void DualSimplex::place_nonbasic() {
  for (std::size_t j = 0; j < total(); ++j) {
    if (state_[j] == State::kBasic) continue;
    const double lo = work_lower(j);
    const double up = work_upper(j);
    if (lo >= up) {
      state_[j] = State::kLower;
    } else if (d_[j] < -kDualTol) {
      state_[j] = State::kUpper;
    } else if (d_[j] > kDualTol) {
      state_[j] = State::kLower;
    } else if (state_[j] == State::kLower && !std::isfinite(lo_[j]) &&
               std::isfinite(up_[j])) {
      state_[j] = State::kUpper;
    } else if (state_[j] == State::kUpper && !std::isfinite(up_[j])) {
      state_[j] = State::kLower;
    }
    x_[j] = state_[j] == State::kLower ? lo : up;
  }
}

void DualSimplex::pivot(int row, std::size_t entering,
                        const std::vector<double>& column, double theta,
                        double leaving_bound) {
  const auto r = static_cast<std::size_t>(row);
  const auto leaving = static_cast<std::size_t>(head_[r]);
  const double alpha = column[r];
  const double delta = (x_[leaving] - leaving_bound) / alpha;
  x_[entering] += delta;
  for (int i = 0; i < m_; ++i) {
    x_[static_cast<std::size_t>(head_[static_cast<std::size_t>(i)])] -=
        delta * column[static_cast<std::size_t>(i)];
  }
  x_[leaving] = leaving_bound;
  state_[leaving] = leaving_bound <= work_lower(leaving) ? State::kLower : State::kUpper;
  d_[leaving] = -theta;
  d_[entering] = 0.0;

  const double inv = 1.0 / alpha;
  for (int k = 0; k < m_; ++k) binv(row, k) *= inv;
  // Rows of the inverse are sparse for these models, so the update walks
  // only the nonzeros of the pivot row and adjusts the weights in place.
  nonzeros_.clear();
  double pivot_weight = 0.0;
  for (int k = 0; k < m_; ++k) {
    const double v = binv(row, k);
    if (v == 0.0) continue;
    nonzeros_.push_back(k);
    pivot_weight += v * v;
  }
  weight_[r] = pivot_weight;
  const double* pivot_row = &binv_[r * cap_];
  for (int i = 0; i < m_; ++i) {
    if (i == row) continue;
    const double f = column[static_cast<std::size_t>(i)];
    if (f == 0.0) continue;
    double* target = &binv_[static_cast<std::size_t>(i) * cap_];
    double cross = 0.0;
    for (int k : nonzeros_) {
      const double b = pivot_row[k];
      cross += target[k] * b;
      target[k] -= f * b;
    }
    auto& w = weight_[static_cast<std::size_t>(i)];
    w = std::max(1e-12, w - 2.0 * f * cross + f * f * pivot_weight);
  }
  head_[r] = static_cast<int>(entering);
  state_[entering] = State::kBasic;
  ++since_reinvert_;
}

void DualSimplex::perturb_costs() {
  original_cost_ = cost_;
  for (std::size_t j = 0; j < total(); ++j) {
    if (state_[j] == State::kBasic || work_lower(j) >= work_upper(j)) continue;
    const double delta = kPerturbation * (1.0 + std::abs(cost_[j])) * perturbation_scale(j);
    const double signed_delta = state_[j] == State::kLower ? delta : -delta;
    cost_[j] += signed_delta;
    d_[j] += signed_delta;
  }
}

bool DualSimplex::restore_costs() {
  cost_ = std::move(original_cost_);
  original_cost_.clear();
  compute_duals();
  bool flipped = false;
  for (std::size_t j = 0; j < total(); ++j) {
    if (state_[j] == State::kBasic) continue;
    const bool wrong = state_[j] == State::kLower ? d_[j] < -kDualTol : d_[j] > kDualTol;
    if (!wrong || !std::isfinite(lo_[j]) || !std::isfinite(up_[j])) continue;
    state_[j] = state_[j] == State::kLower ? State::kUpper : State::kLower;
    x_[j] = state_[j] == State::kLower ? lo_[j] : up_[j];
    flipped = true;
  }
  if (flipped) compute_primal();
  return flipped;
}

LpStatus DualSimplex::solve(Clock::time_point deadline, long max_iterations) {
  if (fresh_ || since_reinvert_ >= reinvert_interval()) {
    reinvert();
    fresh_ = false;
  }
  compute_duals();
  place_nonbasic();
  compute_primal();

  std::vector<double> rho(static_cast<std::size_t>(m_));
  std::vector<double> alpha(total(), 0.0);
  std::vector<double> column;
  long local = 0;
  int stalled = 0;
  bool retried = false;
  bool perturbed_once = false;
  const auto give_up = [&] {
    if (!original_cost_.empty()) {
      cost_ = std::move(original_cost_);
      original_cost_.clear();
      compute_duals();
    }
    return LpStatus::kIterationLimit;
  };
  while (true) {
    if (local >= max_iterations) return give_up();
    if ((local & 31) == 31 && Clock::now() > deadline) return give_up();
    if (stalled >= kStallLimit && !perturbed_once) {
      perturbed_once = true;
      stalled = 0;
      perturb_costs();
    }
    if (since_reinvert_ >= reinvert_interval()) {
      reinvert();
      compute_duals();
      place_nonbasic();
      compute_primal();
    }
    const bool bland = perturbed_once && original_cost_.empty() && stalled >= kStallLimit;

    int row = -1;
    double best = 0.0;
    for (int i = 0; i < m_; ++i) {
      const auto j = static_cast<std::size_t>(head_[static_cast<std::size_t>(i)]);
      double infeasibility = 0.0;
      if (x_[j] < lo_[j] - kPrimalTol) {
        infeasibility = lo_[j] - x_[j];
      } else if (x_[j] > up_[j] + kPrimalTol) {
        infeasibility = x_[j] - up_[j];
      } else {
        continue;
      }
      if (bland) {
        if (row < 0 || head_[static_cast<std::size_t>(i)] <
                           head_[static_cast<std::size_t>(row)]) {
          row = i;
        }
        continue;
      }
      const double score =
          infeasibility * infeasibility / std::max(weight_[static_cast<std::size_t>(i)], 1e-12);
      if (score > best) {
        best = score;
        row = i;
      }
    }
    if (row < 0 && !original_cost_.empty()) {
      stalled = 0;
      if (restore_costs()) continue;
    }
    if (row < 0) {
      for (std::size_t j = 0; j < total(); ++j) {
        if (state_[j] != State::kBasic && artificial_at_bound(j) && d_[j] != 0.0) {
          return LpStatus::kUnbounded;
        }
      }
      return LpStatus::kOptimal;
    }

    const auto leaving = static_cast<std::size_t>(head_[static_cast<std::size_t>(row)]);
    const bool to_lower = x_[leaving] < lo_[leaving];
    const double bound = to_lower ? lo_[leaving] : up_[leaving];
    for (int k = 0; k < m_; ++k) rho[static_cast<std::size_t>(k)] = binv(row, k);

    // Harris two-pass ratio test; Bland mode takes the exact minimum ratio
    // with the lowest index.
    double limit = kInfinity;
    for (std::size_t j = 0; j < total(); ++j) {
      alpha[j] = 0.0;
      if (state_[j] == State::kBasic || work_lower(j) >= work_upper(j)) continue;
      const double a = row_dot(rho, j);
      alpha[j] = a;
      const bool increases = state_[j] == State::kLower;
      const bool eligible = to_lower ? (increases ? a < -kPivotTol : a > kPivotTol)
                                     : (increases ? a > kPivotTol : a < -kPivotTol);
      if (!eligible) continue;
      const double dj = std::max(0.0, increases ? d_[j] : -d_[j]);
      limit = std::min(limit, (dj + (bland ? 0.0 : kDualTol)) / std::abs(a));
    }
    std::size_t entering = total();
    double entering_pivot = 0.0;
    for (std::size_t j = 0; j < total(); ++j) {
      const double a = alpha[j];
      if (a == 0.0 || state_[j] == State::kBasic) continue;
      const bool increases = state_[j] == State::kLower;
      const bool eligible = to_lower ? (increases ? a < -kPivotTol : a > kPivotTol)
                                     : (increases ? a > kPivotTol : a < -kPivotTol);
      if (!eligible) continue;
      const double dj = std::max(0.0, increases ? d_[j] : -d_[j]);
      if (dj / std::abs(a) > limit) continue;
      if (bland) {
        entering = j;
        break;
      }
      if (std::abs(a) > entering_pivot) {
        entering_pivot = std::abs(a);
        entering = j;
      }
    }
    if (entering == total()) {
      if (!retried && since_reinvert_ > 0) {
        retried = true;
        reinvert();
        compute_duals();
        place_nonbasic();
        compute_primal();
        continue;
      }
      if (!original_cost_.empty()) {
        cost_ = std::move(original_cost_);
        original_cost_.clear();
        compute_duals();
      }
      return LpStatus::kInfeasible;
    }
    retried = false;

    const bool increases = state_[entering] == State::kLower;
    const double dq = std::max(0.0, increases ? d_[entering] : -d_[entering]);
    const double ratio = dq / std::abs(alpha[entering]);
    // Leaving to its lower bound needs theta <= 0, to its upper theta >= 0.
    const double theta = to_lower ? -ratio : ratio;
    for (std::size_t j = 0; j < total(); ++j) {
      if (alpha[j] != 0.0 && state_[j] != State::kBasic) d_[j] -= theta * alpha[j];
    }
    column_ftran(entering, column);
    pivot(row, entering, column, theta, bound);
    stalled = ratio <= kDualTol ? stalled + 1 : 0;
    ++iterations_;
    ++local;
  }
}

double DualSimplex::objective() const {
  double v = 0.0;
  for (std::size_t j = 0; j < static_cast<std::size_t>(n_); ++j) v += cost_[j] * x_[j];
  return v;
}

std::vector<double> DualSimplex::primal() const {
  return {x_.begin(), x_.begin() + n_};
}

std::vector<double> DualSimplex::reduced_costs() const {
  const std::vector<double> y = duals();
  std::vector<double> out(static_cast<std::size_t>(n_), 0.0);
  for (std::size_t j = 0; j < out.size(); ++j) {
    if (state_[j] == State::kBasic) continue;
    double v = cost_[j];
    for (const auto& t : cols_[j]) v -= y[static_cast<std::size_t>(t.var)] * t.coef;
    out[j] = v;
  }
  return out;
}

}  // namespace tdm::detail
