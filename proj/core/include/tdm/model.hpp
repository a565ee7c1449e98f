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

#ifndef TDM_MODEL_HPP_
#define TDM_MODEL_HPP_

// Domain types for the TDM configuration problem and the exact latency-rate
// analysis of a given schedule.
//
// Slots are 0-based in the API (slot 0 is the first slot of the frame) and
// durations run 1..f. Human-facing reports convert to 1-based numbering.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdm/rational.hpp"

namespace tdm {

class UnknownClient : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class LatencyUndefined : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InvalidInstance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Fixed-length bit vector over the slots of one frame.
class SlotMask {
 public:
  SlotMask() = default;
  explicit SlotMask(int size);

  static SlotMask from_bits(std::initializer_list<int> bits);
  static SlotMask from_bits(std::span<const int> bits);
  static SlotMask from_slots(int size, std::span<const int> slots);
  static SlotMask full(int size);

  int size() const { return size_; }
  bool test(int slot) const {
    return (words_[static_cast<std::size_t>(slot) >> 6] >> (slot & 63)) & 1U;
  }
  void set(int slot, bool value = true);
  int count() const;
  bool empty() const { return count() == 0; }
  bool intersects(const SlotMask& other) const;
  std::vector<int> slots() const;
  SlotMask rotated(int shift) const;
  std::string to_string() const;  // e.g. "0011000111"
  std::size_t hash() const;

  friend bool operator==(const SlotMask&, const SlotMask&) = default;
  friend std::strong_ordering operator<=>(const SlotMask& a, const SlotMask& b);

 private:
  int size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct SlotMaskHash {
  std::size_t operator()(const SlotMask& mask) const { return mask.hash(); }
};

struct ClientRequirement {
  std::string name;
  Rational rate;                    // required fraction of slots, in [0, 1]
  std::optional<Rational> latency;  // required service latency in slots

  friend bool operator==(const ClientRequirement&,
                         const ClientRequirement&) = default;
};

struct ProblemInstance {
  int frame_size = 0;
  std::vector<ClientRequirement> clients;

  int client_count() const { return static_cast<int>(clients.size()); }

  // Latency requirement with "absent" mapped to f - 1, the weakest bound any
  // client holding at least one slot meets.
  Rational latency_bound(int client) const;

  const ClientRequirement& client(int index) const;

  // Throws InvalidInstance on out-of-range values.
  void validate() const;

  friend bool operator==(const ProblemInstance&,
                         const ProblemInstance&) = default;
};

class Schedule {
 public:
  static constexpr int kEmpty = -1;

  Schedule() = default;
  explicit Schedule(int frame_size) : slots_(frame_size, kEmpty) {}
  explicit Schedule(std::vector<int> slots) : slots_(std::move(slots)) {}

  // Combines disjoint per-client masks; throws std::invalid_argument on overlap.
  static Schedule from_masks(std::span<const SlotMask> masks);

  int frame_size() const { return static_cast<int>(slots_.size()); }
  int at(int slot) const { return slots_[static_cast<std::size_t>(slot)]; }
  void assign(int slot, int client) {
    slots_[static_cast<std::size_t>(slot)] = client;
  }
  const std::vector<int>& slots() const { return slots_; }

  int allocated(int client) const;
  int allocated_total() const;
  SlotMask mask(int client) const;
  Schedule rotated(int shift) const;

  friend bool operator==(const Schedule&, const Schedule&) = default;

 private:
  std::vector<int> slots_;
};

// Worst-case provided service of one client's slots: at(k, j) is the number of
// allocated slots among the j consecutive slots starting at k, wrapping.
class ServiceCurve {
 public:
  explicit ServiceCurve(const SlotMask& mask);

  int frame_size() const { return frame_; }
  int at(int start, int duration) const;
  // Fewest slots granted by any window of this length.
  int minimum(int duration) const;

 private:
  int frame_;
  std::vector<int> prefix_;  // prefix sums over two concatenated frames
};

struct LrCharacterization {
  Rational latency;
  Rational rate;
};

// Maximizer of j - w(k, j) / rate, reported with the latency it implies.
struct LatencyWitness {
  Rational latency;
  int start = 0;     // k, 0-based
  int duration = 0;  // j
};

Rational allocated_rate(const Schedule& schedule, int client);

ServiceCurve service_curve(const Schedule& schedule, int client);

// Service latency per the latency-rate definition, evaluated at the allocated
// rate phi/f. Throws LatencyUndefined when the client holds no slot.
Rational service_latency(const SlotMask& mask);
Rational service_latency(const Schedule& schedule, int client);

// Smallest Theta >= 0 with w(k, j) >= rate * (j - Theta) for every window.
// Durations up to f suffice: each further frame adds phi >= rate * f.
LatencyWitness service_latency_at_rate(const SlotMask& mask,
                                       const Rational& rate);

LrCharacterization characterize(const Schedule& schedule, int client);

struct Request {
  double arrival = 0.0;
  double size = 1.0;  // in slots
};

// Worst-case finishing time bound of consecutive requests served by a
// latency-rate server.
std::vector<double> wc_finishing_times(std::span<const Request> requests,
                                       const LrCharacterization& lr);

enum class Dominance { kBandwidth, kLatency, kMixed };

std::string to_string(Dominance dominance);

// ceil(rate * f)
int rate_slots(const ClientRequirement& req, int frame_size);
// ceil(f / (Theta + 1)), with the absent latency mapped to f - 1
int latency_slots(const ClientRequirement& req, int frame_size);
// Lower bound on the slots any feasible schedule grants the client; zero for a
// zero-rate client, which carries no requirement at all.
int min_slots(const ClientRequirement& req, int frame_size);

Dominance dominance_class(const ClientRequirement& req, int frame_size);

// Longest cyclic run of slots not in the mask.
int largest_gap(const SlotMask& mask);

}  // namespace tdm

#endif  // TDM_MODEL_HPP_
