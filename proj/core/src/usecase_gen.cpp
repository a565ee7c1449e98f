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

#include "tdm/usecase_gen.hpp"

#include <array>
#include <cmath>
#include <random>

#include "log.hpp"
#include "tdm/bnp.hpp"
#include "tdm/ilp_direct.hpp"

namespace tdm {

std::string to_string(UseCaseClass cls) {
  switch (cls) {
    case UseCaseClass::kBandwidth:
      return "BD";
    case UseCaseClass::kLatency:
      return "LD";
    case UseCaseClass::kMixed:
      return "MD";
  }
  return "?";
}

UseCaseClass parse_use_case_class(const std::string& text) {
  if (text == "BD" || text == "bd" || text == "bandwidth") return UseCaseClass::kBandwidth;
  if (text == "LD" || text == "ld" || text == "latency") return UseCaseClass::kLatency;
  if (text == "MD" || text == "md" || text == "mixed") return UseCaseClass::kMixed;
  throw std::invalid_argument("unknown use-case class '" + text + "'");
}

namespace {

Rational exact(double decimal) { return approximate(decimal, 1'000'000); }

Rational round_to(double value, std::int64_t scale) {
  return Rational(std::llround(value * static_cast<double>(scale)), scale);
}

struct Row {
  int clients;
  Interval bd_rate, bd_z, ld_rate, ld_z, md_rate, md_z;
};

constexpr std::array<Row, 5> kRows{{
    {8, {0.06, 0.16}, {0.6, 0.9}, {0.02, 0.07}, {1.6, 3.3}, {0.06, 0.14}, {0.95, 1.4}},
    {16, {0.03, 0.08}, {0.5, 0.75}, {0.01, 0.035}, {1.58, 3.26}, {0.03, 0.07}, {0.9, 1.3}},
    {32, {0.015, 0.04}, {0.4, 0.6}, {0.005, 0.0175}, {1.56, 3.22}, {0.015, 0.035},
     {0.85, 1.2}},
    {64, {0.0075, 0.02}, {0.3, 0.45}, {0.0025, 0.00875}, {1.54, 3.18}, {0.0075, 0.0175},
     {0.8, 1.1}},
    {128, {0.00375, 0.01}, {0.2, 0.3}, {0.00125, 0.004375}, {1.52, 3.14}, {0.00375, 0.00875},
     {0.75, 1.0}},
}};

bool matches(UseCaseClass cls, const ClientRequirement& req, int f) {
  const Dominance d = dominance_class(req, f);
  switch (cls) {
    case UseCaseClass::kBandwidth:
      return d == Dominance::kBandwidth;
    case UseCaseClass::kLatency:
      return d == Dominance::kLatency;
    case UseCaseClass::kMixed:
      return d == Dominance::kMixed;
  }
  return false;
}

// Moves the latency the least amount (on the 0.001 grid) that makes the
// latency slot bound equal the rate slot bound.
Rational nudge_to_mixed(const ClientRequirement& req, int f) {
  const int rate = rate_slots(req, f);
  const Rational latency = *req.latency;
  const Rational low = Rational(f, rate) - 1;  // smallest latency with bound == rate
  if (latency_slots(req, f) > rate) {
    return Rational(ceil(low * 1000), 1000);
  }
  if (rate == 1) return latency;
  const Rational high = Rational(f, rate - 1) - 1;  // exclusive
  return Rational(ceil(high * 1000) - 1, 1000);
}

}  // namespace

bool Interval::contains(const Rational& value) const {
  return exact(lo) <= value && value <= exact(hi);
}

GenSpec GenSpec::defaults(UseCaseClass cls, int clients, std::uint64_t seed) {
  if (clients < 1) throw std::invalid_argument("client count must be positive");
  const Row* row = &kRows.front();
  for (const auto& r : kRows) {
    if (std::abs(std::log2(static_cast<double>(r.clients) / clients)) <
        std::abs(std::log2(static_cast<double>(row->clients) / clients))) {
      row = &r;
    }
  }
  const double scale = static_cast<double>(row->clients) / clients;
  GenSpec spec;
  spec.cls = cls;
  spec.clients = clients;
  spec.frame_size = 8 * clients;
  spec.seed = seed;
  Interval rate;
  switch (cls) {
    case UseCaseClass::kBandwidth:
      rate = row->bd_rate;
      spec.tightness_range = row->bd_z;
      spec.total_rate_window = {0.8, 0.95};
      break;
    case UseCaseClass::kLatency:
      rate = row->ld_rate;
      spec.tightness_range = row->ld_z;
      spec.total_rate_window = {0.35, 0.5};
      spec.latency_load_window = Interval{0.75, 0.95};
      break;
    case UseCaseClass::kMixed:
      rate = row->md_rate;
      spec.tightness_range = row->md_z;
      spec.total_rate_window = {0.7, 0.9};
      spec.latency_load_window = Interval{0.7, 0.9};
      break;
  }
  spec.rate_range = {rate.lo * scale, rate.hi * scale};
  return spec;
}

Rational total_rate(const ProblemInstance& instance) {
  Rational sum(0);
  for (const auto& c : instance.clients) sum += c.rate;
  return sum;
}

Rational latency_load(const ProblemInstance& instance) {
  int slots = 0;
  for (const auto& c : instance.clients) {
    if (c.rate > Rational(0)) slots += latency_slots(c, instance.frame_size);
  }
  return Rational(slots, instance.frame_size);
}

ProblemInstance generate(const GenSpec& spec) {
  if (spec.clients < 1 || spec.frame_size < 1) throw std::invalid_argument("empty spec");
  if (spec.rate_range.lo > spec.rate_range.hi ||
      spec.tightness_range.lo > spec.tightness_range.hi ||
      spec.total_rate_window.lo > spec.total_rate_window.hi) {
    throw std::invalid_argument("unordered generation range");
  }
  const int f = spec.frame_size;
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> rate_draw(spec.rate_range.lo, spec.rate_range.hi);
  std::uniform_real_distribution<double> z_draw(spec.tightness_range.lo,
                                                spec.tightness_range.hi);
  int attempts = 0;
  auto spend = [&] {
    if (++attempts > spec.max_attempts) {
      throw GenerationExhausted("no " + to_string(spec.cls) + " instance with " +
                                std::to_string(spec.clients) + " clients after " +
                                std::to_string(spec.max_attempts) + " attempts");
    }
  };

  ProblemInstance instance;
  instance.frame_size = f;
  instance.clients.resize(static_cast<std::size_t>(spec.clients));
  for (int i = 0; i < spec.clients; ++i) {
    instance.clients[static_cast<std::size_t>(i)].name = "c" + std::to_string(i + 1);
  }

  while (true) {
    spend();
    for (auto& c : instance.clients) c.rate = round_to(rate_draw(rng), 100'000);
    if (!spec.total_rate_window.contains(total_rate(instance))) continue;

    for (auto& c : instance.clients) {
      while (true) {
        const double z = z_draw(rng);
        c.latency = round_to(1.0 / (z * to_double(c.rate)), 1000);
        if (spec.cls == UseCaseClass::kMixed && !matches(spec.cls, c, f)) {
          c.latency = nudge_to_mixed(c, f);
        }
        if (matches(spec.cls, c, f)) break;
        spend();
      }
    }
    // A load outside the window discards the whole draw, rates included:
    // for mixed clients the load is fixed by the rates alone.
    if (!spec.latency_load_window || spec.latency_load_window->contains(latency_load(instance))) {
      detail::log()->debug("generate: {} instance after {} attempts", to_string(spec.cls),
                           attempts);
      return instance;
    }
  }
}

FilterReport filter_feasible(std::span<const ProblemInstance> instances, FilterMethod method,
                             double time_limit_s) {
  FilterReport report;
  for (std::size_t k = 0; k < instances.size(); ++k) {
    SolveResult r;
    if (method == FilterMethod::kBnp) {
      BnpConfig config;
      config.time_limit_s = time_limit_s;
      r = solve_bnp(instances[k], config);
    } else {
      IlpSolveOptions options;
      options.time_limit_s = time_limit_s;
      r = solve_direct(instances[k], {}, options);
    }
    const int idx = static_cast<int>(k);
    if (r.schedule) {
      report.kept.push_back(idx);
    } else if (r.status == SolveStatus::kInfeasible) {
      report.discarded.push_back(idx);
    } else {
      report.timed_out.push_back(idx);
    }
  }
  return report;
}

}  // namespace tdm
