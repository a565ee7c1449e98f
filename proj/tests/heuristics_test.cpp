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


#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tdm/heuristics.hpp"

namespace tdm {
namespace {

ProblemInstance two_client() {
  return {10, {{"c1", Rational(1, 2), Rational(3)}, {"c2", Rational(3, 10), Rational(3)}}};
}

// History where client 0 saw slot 0 go to someone else `times` times.
AllocationHistory history_with(int times) {
  AllocationHistory history(4, 2);
  const std::vector<std::optional<SlotMask>> masks = {SlotMask::from_bits({0, 0, 0, 0}),
                                                      SlotMask::from_bits({1, 0, 0, 0})};
  for (int t = 0; t < times; ++t) history.record(masks);
  return history;
}

TEST(AllocationHistory, CountsOtherHolders) {
  AllocationHistory history(3, 3);
  history.record({SlotMask::from_bits({1, 1, 0}), SlotMask::from_bits({1, 0, 0}),
                  std::nullopt});
  EXPECT_EQ(history.count(0, 0), 1);
  EXPECT_EQ(history.count(0, 1), 1);
  EXPECT_EQ(history.count(0, 2), 2);
  EXPECT_EQ(history.count(1, 0), 0);
  EXPECT_EQ(history.count(1, 1), 1);
  EXPECT_EQ(history.count(2, 0), 0);
}

TEST(ComputeCoefficients, SlotHeldByOthersGrowsWithHistoryUpToTwo) {
  std::mt19937_64 rng(1);
  const std::vector<std::optional<SlotMask>> masks = {SlotMask::from_bits({0, 0, 0, 0}),
                                                      SlotMask::from_bits({1, 0, 0, 0})};
  EXPECT_DOUBLE_EQ(compute_coefficients(0, 0.1, history_with(5), masks, rng)[0], 1.5);
  EXPECT_DOUBLE_EQ(compute_coefficients(0, 0.1, history_with(20), masks, rng)[0], 2.0);
  EXPECT_DOUBLE_EQ(compute_coefficients(0, 0.1, history_with(0), masks, rng)[0], 1.0);
}

TEST(ComputeCoefficients, OwnFreeAndSharedSlots) {
  std::mt19937_64 rng(2);
  const std::vector<std::optional<SlotMask>> masks = {SlotMask::from_bits({1, 1, 0, 0}),
                                                      SlotMask::from_bits({0, 1, 0, 1})};
  const AllocationHistory history(4, 2);
  for (int t = 0; t < 200; ++t) {
    const std::vector<double> c = compute_coefficients(0, 0.1, history, masks, rng);
    EXPECT_DOUBLE_EQ(c[0], 0.9);
    EXPECT_GE(c[1], 1.0);
    EXPECT_LT(c[1], 2.5);
    EXPECT_DOUBLE_EQ(c[2], 1.0);
    EXPECT_DOUBLE_EQ(c[3], 1.0);
  }
}

TEST(ComputeCoefficients, MissingOwnMaskTreatsEverythingAsOthers) {
  std::mt19937_64 rng(3);
  const std::vector<std::optional<SlotMask>> masks = {std::nullopt,
                                                      SlotMask::from_bits({0, 1, 0, 0})};
  const std::vector<double> c = compute_coefficients(0, 0.1, AllocationHistory(4, 2), masks, rng);
  EXPECT_EQ(c, (std::vector<double>{1.0, 1.0, 1.0, 1.0}));
}

TEST(Generative, TwoClientScheduleIsFeasibleAndNoBetterThanOptimal) {
  const SolveResult result = generative(two_client());
  ASSERT_EQ(result.status, SolveStatus::kFeasible);
  EXPECT_TRUE(oracle::schedule_ok(*result.schedule, two_client()));
  EXPECT_GE(*result.objective, Rational(4, 5));
}

TEST(Generative, DeterministicPerSeed) {
  std::mt19937_64 rng(127);
  for (int t = 0; t < 10; ++t) {
    const ProblemInstance instance = oracle::random_instance(rng, 3, 6, 12);
    HeuristicConfig config;
    config.seed = 42 + t;
    const SolveResult a = generative(instance, config);
    const SolveResult b = generative(instance, config);
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.schedule, b.schedule);
  }
}

TEST(Generative, SchedulesVerifyAndRespectTheOptimum) {
  std::mt19937_64 rng(131);
  int solved = 0;
  for (int t = 0; t < 30; ++t) {
    const ProblemInstance instance = oracle::random_instance(rng, 3, 4, 10);
    const SolveResult result = generative(instance);
    const std::optional<int> optimum = oracle::exhaustive_min_slots(instance);
    if (result.status == SolveStatus::kNoFeasible) {
      EXPECT_FALSE(result.has_schedule());
      continue;
    }
    ASSERT_EQ(result.status, SolveStatus::kFeasible);
    ASSERT_TRUE(optimum.has_value()) << "heuristic solved an infeasible instance " << t;
    ++solved;
    EXPECT_TRUE(oracle::schedule_ok(*result.schedule, instance));
    EXPECT_GE(*result.objective, Rational(*optimum, instance.frame_size));
  }
  EXPECT_GT(solved, 5);
}

TEST(ContinuousAllocation, TwoClientBlocksBreakTheLatency) {
  const SolveResult result = continuous_allocation(two_client());
  EXPECT_EQ(result.status, SolveStatus::kNoFeasible);
  // A block of five slots leaves a five-slot hole; at rate 0.5 the oracle
  // latency of that layout is 5, above the required 3.
  oracle::Bits block = {1, 1, 1, 1, 1, 0, 0, 0, 0, 0};
  EXPECT_EQ(oracle::latency(block, Rational(1, 2)), Rational(5));
}

TEST(ContinuousAllocation, LooseRequirementsFitInBlocks) {
  const ProblemInstance loose{8,
                              {{"a", Rational(1, 4), std::nullopt},
                               {"b", Rational(1, 4), std::nullopt}}};
  const SolveResult result = continuous_allocation(loose);
  ASSERT_EQ(result.status, SolveStatus::kFeasible);
  EXPECT_TRUE(oracle::schedule_ok(*result.schedule, loose));
  EXPECT_EQ(*result.objective, Rational(1, 2));
}

}  // namespace
}  // namespace tdm
