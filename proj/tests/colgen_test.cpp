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


#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tdm/colgen.hpp"

namespace tdm {
namespace {

ProblemInstance two_client() {
  return {10, {{"c1", Rational(1, 2), Rational(3)}, {"c2", Rational(3, 10), Rational(3)}}};
}

ColumnPool seeded_two_client_pool() {
  ColumnPool pool(2, 10);
  pool.add(0, SlotMask::from_bits({0, 0, 1, 1, 0, 0, 0, 1, 1, 1}));
  pool.add(1, SlotMask::from_bits({1, 1, 0, 0, 0, 1, 1, 0, 0, 0}));
  return pool;
}

ColumnPool full_mask_pool(const ProblemInstance& instance) {
  ColumnPool pool(instance.client_count(), instance.frame_size);
  for (int i = 0; i < instance.client_count(); ++i) {
    pool.add(i, SlotMask::full(instance.frame_size));
  }
  return pool;
}

// Cheapest client-feasible mask honoring the decisions, by enumeration.
std::optional<double> brute_force_pricing(const ProblemInstance& instance, int client,
                                          const DualPrices& duals,
                                          const DecisionSet& decisions) {
  const int f = instance.frame_size;
  std::optional<double> best;
  for (std::uint32_t m = 0; m < (1U << f); ++m) {
    oracle::Bits bits(static_cast<std::size_t>(f));
    std::vector<int> slots;
    for (int s = 0; s < f; ++s) {
      bits[static_cast<std::size_t>(s)] = (m >> s) & 1U;
      if (bits[static_cast<std::size_t>(s)]) slots.push_back(s);
    }
    if (!decisions.admits(client, SlotMask::from_slots(f, slots))) continue;
    if (!oracle::client_ok(bits, instance.clients[static_cast<std::size_t>(client)], f)) continue;
    double cost = -duals.sigma[static_cast<std::size_t>(client)];
    for (int s : slots) cost += duals.lambda[static_cast<std::size_t>(s)] + 1.0 / f;
    if (!best || cost < *best) best = cost;
  }
  return best;
}

std::vector<double> distinct_objectives(const ColgenResult& result) {
  std::vector<double> out;
  for (const auto& step : result.trace) {
    if (out.empty() || std::fabs(out.back() - step.master_objective) > 1e-9) {
      out.push_back(step.master_objective);
    }
  }
  return out;
}

TEST(DecisionSet, AllocationForbidsOthers) {
  DecisionSet decisions(2, 4);
  EXPECT_TRUE(decisions.allocate(0, 1));
  EXPECT_TRUE(decisions.is_allocated(0, 1));
  EXPECT_TRUE(decisions.is_forbidden(1, 1));
  EXPECT_FALSE(decisions.allocate(1, 1));
  EXPECT_FALSE(decisions.forbid(0, 1));
  EXPECT_TRUE(decisions.forbid(1, 3));
  EXPECT_FALSE(decisions.allocate(1, 3));
  EXPECT_EQ(decisions.positive_count(), 1);
  EXPECT_EQ(decisions.negative_count(), 1);
  EXPECT_EQ(decisions.blocked(1).to_string(), "0101");
  EXPECT_TRUE(decisions.admits(0, SlotMask::from_bits({1, 1, 0, 0})));
  EXPECT_FALSE(decisions.admits(0, SlotMask::from_bits({1, 0, 0, 0})));
  EXPECT_FALSE(decisions.admits(1, SlotMask::from_bits({0, 1, 0, 0})));
  EXPECT_EQ(decisions.fixings(),
            (std::vector<SlotFixing>{{0, 1, true}, {1, 3, false}}));
}

TEST(ColumnPool, RejectsDuplicates) {
  ColumnPool pool(2, 4);
  EXPECT_TRUE(pool.add(0, SlotMask::from_bits({1, 0, 1, 0})));
  EXPECT_FALSE(pool.add(0, SlotMask::from_bits({1, 0, 1, 0})));
  EXPECT_TRUE(pool.add(1, SlotMask::from_bits({1, 0, 1, 0})));
  EXPECT_EQ(pool.size(), 2);
}

TEST(BuildMaster, ClientWithoutAdmittedColumnsIsInfeasible) {
  ColumnPool pool = seeded_two_client_pool();
  DecisionSet decisions(2, 10);
  decisions.forbid(0, 2);
  EXPECT_THROW(build_master(pool, decisions), NodeInfeasible);
}

TEST(ColumnGeneration, TwoClientGoldenTrace) {
  for (const AddPolicy policy : {AddPolicy::kFirstNegative, AddPolicy::kAllNegative}) {
    ColumnPool pool = seeded_two_client_pool();
    ColgenOptions options;
    options.add_policy = policy;
    options.early_stop = false;
    const ColgenResult result = column_generation(pool, DecisionSet(2, 10), two_client(), options);
    ASSERT_EQ(result.status, ColgenStatus::kConverged);
    const std::vector<double> path = distinct_objectives(result);
    ASSERT_EQ(path.size(), 3u);
    EXPECT_EQ(approximate(path[0], 100), Rational(9, 10));
    EXPECT_EQ(approximate(path[1], 100), Rational(17, 20));
    EXPECT_EQ(approximate(path[2], 100), Rational(4, 5));
    const auto& first = result.trace.front().reduced_costs;
    ASSERT_TRUE(first[0] && first[1]);
    EXPECT_NEAR(*first[0], 0.0, 1e-9);
    EXPECT_NEAR(*first[1], -0.1, 1e-9);
    EXPECT_NEAR(result.lower_bound, 0.8, 1e-9);
  }
}

TEST(ExtractDuals, CapacityPricesAreNonNegative) {
  std::mt19937_64 rng(89);
  for (int t = 0; t < 20; ++t) {
    const ProblemInstance instance = oracle::random_instance(rng, 3, 4, 10);
    ColumnPool pool = full_mask_pool(instance);
    const MasterModel master = build_master(pool, DecisionSet(instance.client_count(),
                                                              instance.frame_size));
    const LpSolution lp = solve_lp(master.model);
    ASSERT_EQ(lp.status, LpStatus::kOptimal);
    const DualPrices duals =
        extract_duals(lp, master, instance.client_count(), instance.frame_size);
    ASSERT_EQ(duals.lambda.size(), static_cast<std::size_t>(instance.frame_size));
    for (double lambda : duals.lambda) EXPECT_GE(lambda, -1e-9);
    // Every pooled column prices at a non-negative reduced cost at the optimum.
    for (int i = 0; i < instance.client_count(); ++i) {
      for (const SlotMask& column : pool.columns(i)) {
        double cost = -duals.sigma[static_cast<std::size_t>(i)];
        for (int s : column.slots()) {
          cost += duals.lambda[static_cast<std::size_t>(s)] + 1.0 / instance.frame_size;
        }
        EXPECT_GE(cost, -1e-7);
      }
    }
  }
}

TEST(PriceClient, ZeroDualsGiveTheCheapestFeasibleMask) {
  const ProblemInstance instance = two_client();
  const DualPrices zero{std::vector<double>(10, 0.0), std::vector<double>(2, 0.0)};
  for (int i = 0; i < 2; ++i) {
    const PricingResult priced = price_client(instance, i, zero, DecisionSet(2, 10));
    ASSERT_EQ(priced.status, PricingStatus::kOptimal);
    EXPECT_NEAR(priced.reduced_cost, min_slots(instance.clients[i], 10) / 10.0, 1e-9);
    EXPECT_GE(priced.reduced_cost, 0.0);
    ASSERT_TRUE(priced.column.has_value());
    EXPECT_TRUE(oracle::client_ok(
        oracle::bits_of(Schedule::from_masks(std::vector<SlotMask>{*priced.column}), 0),
        instance.clients[i], 10));
  }
}

TEST(PriceClient, MatchesBruteForceUnderRandomDuals) {
  std::mt19937_64 rng(97);
  std::uniform_real_distribution<double> price(0.0, 0.3);
  for (int t = 0; t < 40; ++t) {
    const ProblemInstance instance = oracle::random_instance(rng, 2, 4, 11);
    const int f = instance.frame_size;
    DualPrices duals;
    for (int s = 0; s < f; ++s) duals.lambda.push_back(price(rng));
    for (int i = 0; i < instance.client_count(); ++i) duals.sigma.push_back(price(rng) * 3);
    DecisionSet decisions(instance.client_count(), f);
    if (t % 2 == 1) {
      decisions.forbid(0, static_cast<int>(rng() % static_cast<unsigned>(f)));
      decisions.allocate(0, static_cast<int>(rng() % static_cast<unsigned>(f)));
    }
    for (int i = 0; i < instance.client_count(); ++i) {
      const std::optional<double> expected = brute_force_pricing(instance, i, duals, decisions);
      const PricingResult priced = price_client(instance, i, duals, decisions);
      if (!expected) {
        EXPECT_EQ(priced.status, PricingStatus::kInfeasible) << "instance " << t;
        continue;
      }
      ASSERT_EQ(priced.status, PricingStatus::kOptimal) << "instance " << t;
      EXPECT_NEAR(priced.reduced_cost, *expected, 1e-7) << "instance " << t;
      ASSERT_TRUE(priced.column.has_value());
      EXPECT_TRUE(decisions.admits(i, *priced.column));
    }
  }
}

TEST(ColumnGeneration, RootBoundNeverExceedsTheOptimum) {
  std::mt19937_64 rng(101);
  int compared = 0;
  for (int t = 0; t < 20; ++t) {
    const ProblemInstance instance = oracle::random_instance(rng, 3, 12, 12);
    const std::optional<int> optimum = oracle::exhaustive_min_slots(instance);
    ColumnPool pool = full_mask_pool(instance);
    ColgenOptions options;
    options.lagrangian_every = 1;
    options.early_stop = false;
    const ColgenResult result = column_generation(
        pool, DecisionSet(instance.client_count(), instance.frame_size), instance, options);
    if (result.status == ColgenStatus::kInfeasible) {
      EXPECT_FALSE(optimum.has_value());
      continue;
    }
    ASSERT_EQ(result.status, ColgenStatus::kConverged);
    for (const auto& step : result.trace) {
      if (step.lagrangian_bound) {
        EXPECT_LE(*step.lagrangian_bound, result.lower_bound + 1e-7);
      }
    }
    if (!optimum) continue;
    ++compared;
    EXPECT_LE(result.lower_bound, static_cast<double>(*optimum) / instance.frame_size + 1e-7)
        << "instance " << t;
  }
  EXPECT_GT(compared, 5);
}

TEST(IntegralSchedule, OnlyForSingleColumnSolutions) {
  ColumnPool pool = seeded_two_client_pool();
  MasterSolution master;
  master.weights = {{1.0}, {1.0}};
  master.overalloc.assign(10, 0.0);
  const std::optional<Schedule> schedule = integral_schedule(master, pool);
  ASSERT_TRUE(schedule.has_value());
  EXPECT_EQ(schedule->allocated_total(), 9);
  master.weights = {{0.5}, {1.0}};
  EXPECT_FALSE(integral_schedule(master, pool).has_value());
}

}  // namespace
}  // namespace tdm
