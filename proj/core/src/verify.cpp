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

#include "tdm/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>

namespace tdm {

std::string to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::kCollision:
      return "collision";
    case Violation::Kind::kRate:
      return "rate";
    case Violation::Kind::kLatency:
      return "latency";
  }
  return "unknown";
}

ClientReport client_feasible(const SlotMask& mask, const ClientRequirement& req,
                             int frame_size) {
  if (mask.size() != frame_size) throw std::invalid_argument("mask length differs from f");
  ClientReport report;
  report.slots = mask.count();
  report.rate = Rational(report.slots, frame_size);
  if (report.slots > 0) report.latency = service_latency(mask);
  if (Rational(report.slots) < req.rate * Rational(frame_size)) {
    report.feasible = false;
    Violation v;
    v.kind = Violation::Kind::kRate;
    v.message = "holds " + std::to_string(report.slots) + " of " + std::to_string(frame_size) +
                " slots, rate " + format_rational(req.rate) + " needs " +
                std::to_string(ceil(req.rate * Rational(frame_size)));
    report.violations.push_back(std::move(v));
  }
  if (req.rate > Rational(0)) {
    const Rational bound = req.latency ? *req.latency : Rational(frame_size - 1);
    const LatencyWitness witness = service_latency_at_rate(mask, req.rate);
    report.required_latency = witness.latency;
    if (witness.latency > bound) {
      report.feasible = false;
      Violation v;
      v.kind = Violation::Kind::kLatency;
      v.start = witness.start;
      v.duration = witness.duration;
      const ServiceCurve curve(mask);
      v.message = "window of " + std::to_string(witness.duration) + " slots from slot " +
                  std::to_string(witness.start + 1) + " grants " +
                  std::to_string(curve.at(witness.start, witness.duration)) +
                  ", latency " + format_rational(witness.latency) + " exceeds " +
                  format_rational(bound);
      report.violations.push_back(std::move(v));
    }
  }
  return report;
}

ScheduleReport schedule_feasible(std::span<const SlotMask> masks,
                                 const ProblemInstance& instance) {
  if (static_cast<int>(masks.size()) != instance.client_count()) {
    throw std::invalid_argument("one mask per client expected");
  }
  const int f = instance.frame_size;
  ScheduleReport report;
  int allocated = 0;
  for (int s = 0; s < f; ++s) {
    std::vector<int> holders;
    for (int i = 0; i < instance.client_count(); ++i) {
      if (masks[static_cast<std::size_t>(i)].test(s)) holders.push_back(i);
    }
    if (!holders.empty()) ++allocated;
    if (holders.size() > 1) {
      Violation v;
      v.kind = Violation::Kind::kCollision;
      v.slot = s;
      v.message = "slot " + std::to_string(s + 1) + " claimed by " +
                  std::to_string(holders.size()) + " clients";
      v.clients = std::move(holders);
      report.collisions.push_back(std::move(v));
      report.feasible = false;
    }
  }
  report.objective = Rational(allocated, f);
  for (int i = 0; i < instance.client_count(); ++i) {
    ClientReport c = client_feasible(masks[static_cast<std::size_t>(i)], instance.client(i), f);
    c.client = i;
    for (auto& v : c.violations) v.clients = {i};
    if (!c.feasible) report.feasible = false;
    report.clients.push_back(std::move(c));
  }
  return report;
}

ScheduleReport schedule_feasible(const Schedule& schedule, const ProblemInstance& instance) {
  if (schedule.frame_size() != instance.frame_size) {
    throw std::invalid_argument("schedule and instance frame sizes differ");
  }
  for (int s = 0; s < schedule.frame_size(); ++s) {
    const int c = schedule.at(s);
    if (c != Schedule::kEmpty && (c < 0 || c >= instance.client_count())) {
      throw UnknownClient("schedule names unknown client " + std::to_string(c));
    }
  }
  std::vector<SlotMask> masks;
  for (int i = 0; i < instance.client_count(); ++i) masks.push_back(schedule.mask(i));
  return schedule_feasible(masks, instance);
}

std::vector<SlotMask> feasible_masks(const ClientRequirement& req, int frame_size) {
  if (frame_size > 30) throw BudgetExceeded("mask enumeration limited to f <= 30");
  const int needed = static_cast<int>(ceil(req.rate * Rational(frame_size)));
  std::vector<std::pair<int, std::uint32_t>> keep;
  const std::uint32_t end = std::uint32_t{1} << frame_size;
  for (std::uint32_t bits = 0; bits < end; ++bits) {
    const int count = std::popcount(bits);
    if (count < needed) continue;
    SlotMask mask(frame_size);
    for (int s = 0; s < frame_size; ++s) {
      if ((bits >> s) & 1U) mask.set(s);
    }
    if (client_feasible(mask, req, frame_size).feasible) keep.emplace_back(count, bits);
  }
  std::sort(keep.begin(), keep.end());
  std::vector<SlotMask> out;
  out.reserve(keep.size());
  for (const auto& [count, bits] : keep) {
    SlotMask mask(frame_size);
    for (int s = 0; s < frame_size; ++s) {
      if ((bits >> s) & 1U) mask.set(s);
    }
    out.push_back(std::move(mask));
  }
  return out;
}

BruteForceResult brute_force_optimum(const ProblemInstance& instance,
                                     const BruteForceOptions& options) {
  instance.validate();
  const int n = instance.client_count();
  const int f = instance.frame_size;
  if (f * std::log(static_cast<double>(n + 1)) > std::log(options.budget)) {
    throw BudgetExceeded("(n + 1)^f exceeds the enumeration budget");
  }

  std::vector<std::uint32_t> must(static_cast<std::size_t>(n), 0);
  std::vector<std::uint32_t> must_not(static_cast<std::size_t>(n), 0);
  for (const auto& fx : options.fixings) {
    if (fx.client < 0 || fx.client >= n || fx.slot < 0 || fx.slot >= f) {
      throw std::invalid_argument("fixing outside the instance");
    }
    const std::uint32_t bit = std::uint32_t{1} << fx.slot;
    if (fx.allocate) {
      must[static_cast<std::size_t>(fx.client)] |= bit;
      for (int other = 0; other < n; ++other) {
        if (other != fx.client) must_not[static_cast<std::size_t>(other)] |= bit;
      }
    } else {
      must_not[static_cast<std::size_t>(fx.client)] |= bit;
    }
  }

  std::vector<std::vector<std::uint32_t>> candidates(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (const auto& mask : feasible_masks(instance.client(i), f)) {
      std::uint32_t bits = 0;
      for (int s : mask.slots()) bits |= std::uint32_t{1} << s;
      const auto idx = static_cast<std::size_t>(i);
      if ((bits & must[idx]) != must[idx] || (bits & must_not[idx]) != 0) continue;
      candidates[idx].push_back(bits);
    }
  }
  BruteForceResult result;
  for (const auto& c : candidates) {
    if (c.empty()) return result;
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return candidates[static_cast<std::size_t>(a)].size() <
           candidates[static_cast<std::size_t>(b)].size();
  });
  std::vector<int> suffix_min(static_cast<std::size_t>(n) + 1, 0);
  for (int d = n - 1; d >= 0; --d) {
    const auto& c = candidates[static_cast<std::size_t>(order[static_cast<std::size_t>(d)])];
    suffix_min[static_cast<std::size_t>(d)] =
        suffix_min[static_cast<std::size_t>(d) + 1] + std::popcount(c.front());
  }

  const bool rotate = options.fixings.empty();
  int best = std::numeric_limits<int>::max();
  std::vector<std::uint32_t> chosen(static_cast<std::size_t>(n), 0);
  std::vector<std::uint32_t> best_choice;
  std::function<void(int, std::uint32_t, int)> search = [&](int depth, std::uint32_t used,
                                                            int count) {
    if (depth == n) {
      if (rotate && count > 0 && (used & 1U) == 0) return;
      ++result.leaves;
      if (count < best) {
        best = count;
        best_choice = chosen;
      }
      return;
    }
    const int client = order[static_cast<std::size_t>(depth)];
    for (std::uint32_t bits : candidates[static_cast<std::size_t>(client)]) {
      const int c = std::popcount(bits);
      if (count + c + suffix_min[static_cast<std::size_t>(depth) + 1] >= best) break;
      if (bits & used) continue;
      chosen[static_cast<std::size_t>(client)] = bits;
      search(depth + 1, used | bits, count + c);
    }
  };
  search(0, 0, 0);
  if (best_choice.empty()) return result;

  Schedule schedule(f);
  for (int i = 0; i < n; ++i) {
    for (int s = 0; s < f; ++s) {
      if ((best_choice[static_cast<std::size_t>(i)] >> s) & 1U) schedule.assign(s, i);
    }
  }
  result.objective = Rational(best, f);
  result.schedule = std::move(schedule);
  return result;
}

}  // namespace tdm
