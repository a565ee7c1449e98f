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

#ifndef TDM_USECASE_GEN_HPP_
#define TDM_USECASE_GEN_HPP_

// Synthetic instances of three classes: every client bandwidth-dominated (BD),
// latency-dominated (LD), or needing the same slot count for both (MD).

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdm/model.hpp"

namespace tdm {

enum class UseCaseClass { kBandwidth, kLatency, kMixed };

std::string to_string(UseCaseClass cls);  // "BD", "LD", "MD"
UseCaseClass parse_use_case_class(const std::string& text);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  // Inclusive membership with the bounds read as exact decimals.
  bool contains(const Rational& value) const;
};

struct GenSpec {
  UseCaseClass cls = UseCaseClass::kBandwidth;
  int clients = 8;
  Interval rate_range;
  Interval tightness_range;  // latency = 1 / (tightness * rate)
  Interval total_rate_window;
  std::optional<Interval> latency_load_window;
  int frame_size = 64;
  std::uint64_t seed = 1;
  int max_attempts = 10'000;

  // Calibrated ranges for 8, 16, 32, 64 and 128 clients; other counts use the
  // nearest calibrated row with rates scaled by 8 / n. f = 8 n.
  static GenSpec defaults(UseCaseClass cls, int clients, std::uint64_t seed = 1);
};

class GenerationExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Rational total_rate(const ProblemInstance& instance);
// sum_i ceil(f / (latency_i + 1)) / f over clients with a non-zero rate.
Rational latency_load(const ProblemInstance& instance);

// Deterministic in its argument. Throws GenerationExhausted.
ProblemInstance generate(const GenSpec& spec);

enum class FilterMethod { kBnp, kIlp };

struct FilterReport {
  std::vector<int> kept;
  std::vector<int> discarded;  // proven infeasible
  std::vector<int> timed_out;  // no verdict within the limit; also discarded
};

FilterReport filter_feasible(std::span<const ProblemInstance> instances, FilterMethod method,
                             double time_limit_s);

}  // namespace tdm

#endif  // TDM_USECASE_GEN_HPP_
