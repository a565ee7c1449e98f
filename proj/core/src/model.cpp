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

#include "tdm/model.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>

namespace tdm {

SlotMask::SlotMask(int size)
    : size_(size), words_((static_cast<std::size_t>(size) + 63) / 64, 0) {
  if (size < 0) throw std::invalid_argument("negative mask size");
}

SlotMask SlotMask::from_bits(std::initializer_list<int> bits) {
  return from_bits(std::span<const int>(bits.begin(), bits.size()));
}

SlotMask SlotMask::from_bits(std::span<const int> bits) {
  SlotMask mask(static_cast<int>(bits.size()));
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != 0) mask.set(static_cast<int>(i));
  }
  return mask;
}

SlotMask SlotMask::from_slots(int size, std::span<const int> slots) {
  SlotMask mask(size);
  for (int s : slots) {
    if (s < 0 || s >= size) throw std::out_of_range("slot outside frame");
    mask.set(s);
  }
  return mask;
}

SlotMask SlotMask::full(int size) {
  SlotMask mask(size);
  for (int s = 0; s < size; ++s) mask.set(s);
  return mask;
}

void SlotMask::set(int slot, bool value) {
  const std::uint64_t bit = std::uint64_t{1} << (slot & 63);
  auto& word = words_[static_cast<std::size_t>(slot) >> 6];
  word = value ? (word | bit) : (word & ~bit);
}

int SlotMask::count() const {
  int total = 0;
  for (auto w : words_) total += std::popcount(w);
  return total;
}

bool SlotMask::intersects(const SlotMask& other) const {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (words_[i] & other.words_[i]) return true;
  }
  return false;
}

std::vector<int> SlotMask::slots() const {
  std::vector<int> out;
  for (int s = 0; s < size_; ++s) {
    if (test(s)) out.push_back(s);
  }
  return out;
}

SlotMask SlotMask::rotated(int shift) const {
  SlotMask out(size_);
  if (size_ == 0) return out;
  shift %= size_;
  if (shift < 0) shift += size_;
  for (int s = 0; s < size_; ++s) {
    if (test(s)) out.set((s + shift) % size_);
  }
  return out;
}

std::string SlotMask::to_string() const {
  std::string out(static_cast<std::size_t>(size_), '0');
  for (int s = 0; s < size_; ++s) {
    if (test(s)) out[static_cast<std::size_t>(s)] = '1';
  }
  return out;
}

std::size_t SlotMask::hash() const {
  std::size_t h = std::hash<int>{}(size_);
  for (auto w : words_) {
    h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) +
         (h >> 2);
  }
  return h;
}

std::strong_ordering operator<=>(const SlotMask& a, const SlotMask& b) {
  if (auto c = a.size_ <=> b.size_; c != 0) return c;
  return a.words_ <=> b.words_;
}

Rational ProblemInstance::latency_bound(int index) const {
  const auto& req = client(index);
  return req.latency ? *req.latency : Rational(frame_size - 1);
}

const ClientRequirement& ProblemInstance::client(int index) const {
  if (index < 0 || index >= client_count()) {
    throw UnknownClient("unknown client index " + std::to_string(index));
  }
  return clients[static_cast<std::size_t>(index)];
}

void ProblemInstance::validate() const {
  if (frame_size < 1) throw InvalidInstance("frame size must be at least 1");
  if (clients.empty()) throw InvalidInstance("instance has no clients");
  for (const auto& c : clients) {
    if (c.rate < Rational(0) || c.rate > Rational(1)) {
      throw InvalidInstance("client '" + c.name + "': rate outside [0, 1]");
    }
    if (c.latency && *c.latency < Rational(0)) {
      throw InvalidInstance("client '" + c.name + "': negative latency");
    }
  }
}

Schedule Schedule::from_masks(std::span<const SlotMask> masks) {
  if (masks.empty()) throw std::invalid_argument("no masks");
  Schedule schedule(masks.front().size());
  for (std::size_t c = 0; c < masks.size(); ++c) {
    for (int s : masks[c].slots()) {
      if (schedule.at(s) != kEmpty) {
        throw std::invalid_argument("slot " + std::to_string(s + 1) +
                                    " claimed by two clients");
      }
      schedule.assign(s, static_cast<int>(c));
    }
  }
  return schedule;
}

int Schedule::allocated(int client) const {
  return static_cast<int>(std::count(slots_.begin(), slots_.end(), client));
}

int Schedule::allocated_total() const {
  return static_cast<int>(
      std::count_if(slots_.begin(), slots_.end(), [](int c) { return c != kEmpty; }));
}

SlotMask Schedule::mask(int client) const {
  SlotMask out(frame_size());
  for (int s = 0; s < frame_size(); ++s) {
    if (slots_[static_cast<std::size_t>(s)] == client) out.set(s);
  }
  return out;
}

Schedule Schedule::rotated(int shift) const {
  const int f = frame_size();
  Schedule out(f);
  if (f == 0) return out;
  shift %= f;
  if (shift < 0) shift += f;
  for (int s = 0; s < f; ++s) out.assign((s + shift) % f, at(s));
  return out;
}

ServiceCurve::ServiceCurve(const SlotMask& mask)
    : frame_(mask.size()), prefix_(2 * static_cast<std::size_t>(mask.size()) + 1, 0) {
  for (int i = 0; i < 2 * frame_; ++i) {
    prefix_[static_cast<std::size_t>(i) + 1] =
        prefix_[static_cast<std::size_t>(i)] + (mask.test(i % frame_) ? 1 : 0);
  }
}

int ServiceCurve::at(int start, int duration) const {
  if (start < 0 || start >= frame_ || duration < 0 || duration > frame_) {
    throw std::out_of_range("service curve index out of range");
  }
  return prefix_[static_cast<std::size_t>(start + duration)] -
         prefix_[static_cast<std::size_t>(start)];
}

int ServiceCurve::minimum(int duration) const {
  int best = std::numeric_limits<int>::max();
  for (int k = 0; k < frame_; ++k) best = std::min(best, at(k, duration));
  return best;
}

namespace {

void check_client(const Schedule& schedule, int client) {
  if (client < 0) throw UnknownClient("negative client index");
  (void)schedule;
}

}  // namespace

Rational allocated_rate(const Schedule& schedule, int client) {
  check_client(schedule, client);
  if (schedule.frame_size() == 0) throw std::invalid_argument("empty schedule");
  return Rational(schedule.allocated(client), schedule.frame_size());
}

ServiceCurve service_curve(const Schedule& schedule, int client) {
  check_client(schedule, client);
  return ServiceCurve(schedule.mask(client));
}

LatencyWitness service_latency_at_rate(const SlotMask& mask,
                                       const Rational& rate) {
  if (rate <= Rational(0)) {
    throw LatencyUndefined("service latency undefined for a zero rate");
  }
  const ServiceCurve curve(mask);
  const int f = mask.size();
  LatencyWitness best{Rational(0), 0, 0};
  for (int j = 1; j <= f; ++j) {
    for (int k = 0; k < f; ++k) {
      const Rational candidate = Rational(j) - Rational(curve.at(k, j)) / rate;
      if (candidate > best.latency) best = {candidate, k, j};
    }
  }
  return best;
}

Rational service_latency(const SlotMask& mask) {
  const int phi = mask.count();
  if (phi == 0) {
    throw LatencyUndefined("service latency undefined: client holds no slot");
  }
  return service_latency_at_rate(mask, Rational(phi, mask.size())).latency;
}

Rational service_latency(const Schedule& schedule, int client) {
  check_client(schedule, client);
  return service_latency(schedule.mask(client));
}

LrCharacterization characterize(const Schedule& schedule, int client) {
  return {service_latency(schedule, client), allocated_rate(schedule, client)};
}

std::vector<double> wc_finishing_times(std::span<const Request> requests,
                                       const LrCharacterization& lr) {
  if (lr.rate <= Rational(0)) {
    throw LatencyUndefined("finishing times undefined for a zero rate");
  }
  const double theta = to_double(lr.latency);
  const double rho = to_double(lr.rate);
  std::vector<double> out;
  out.reserve(requests.size());
  double previous = -std::numeric_limits<double>::infinity();
  for (const auto& r : requests) {
    if (!out.empty() && r.arrival < requests[out.size() - 1].arrival) {
      throw std::invalid_argument("requests must be sorted by arrival");
    }
    previous = std::max(r.arrival + theta, previous) + r.size / rho;
    out.push_back(previous);
  }
  return out;
}

std::string to_string(Dominance dominance) {
  switch (dominance) {
    case Dominance::kBandwidth:
      return "bandwidth";
    case Dominance::kLatency:
      return "latency";
    case Dominance::kMixed:
      return "mixed";
  }
  return "unknown";
}

int rate_slots(const ClientRequirement& req, int frame_size) {
  return static_cast<int>(ceil(req.rate * Rational(frame_size)));
}

int latency_slots(const ClientRequirement& req, int frame_size) {
  const Rational theta = req.latency ? *req.latency : Rational(frame_size - 1);
  return static_cast<int>(ceil(Rational(frame_size) / (theta + 1)));
}

int min_slots(const ClientRequirement& req, int frame_size) {
  if (req.rate == Rational(0)) return 0;
  return std::max(rate_slots(req, frame_size), latency_slots(req, frame_size));
}

Dominance dominance_class(const ClientRequirement& req, int frame_size) {
  const int bandwidth = rate_slots(req, frame_size);
  const int latency = latency_slots(req, frame_size);
  if (latency > bandwidth) return Dominance::kLatency;
  if (latency == bandwidth) return Dominance::kMixed;
  return Dominance::kBandwidth;
}

int largest_gap(const SlotMask& mask) {
  const int f = mask.size();
  if (mask.count() == 0) return f;
  int best = 0;
  int run = 0;
  for (int i = 0; i < 2 * f; ++i) {
    if (mask.test(i % f)) {
      run = 0;
    } else {
      best = std::max(best, std::min(++run, f));
    }
  }
  return best;
}

}  // namespace tdm
