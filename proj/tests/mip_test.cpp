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
#include "tdm/mip.hpp"

namespace tdm {
namespace {

LinearModel random_binary_model(std::mt19937_64& rng, int vars, int rows) {
  std::uniform_int_distribution<int> coef(-3, 5);
  LinearModel model;
  for (int v = 0; v < vars; ++v) model.add_binary(static_cast<double>(coef(rng)));
  for (int r = 0; r < rows; ++r) {
    Constraint c;
    for (int v = 0; v < vars; ++v) {
      const int a = coef(rng);
      if (a != 0) c.terms.push_back({v, static_cast<double>(a)});
    }
    c.sense = rng() % 2 ? Sense::kGreaterEqual : Sense::kLessEqual;
    c.rhs = static_cast<double>(std::uniform_int_distribution<int>(-2, 6)(rng));
    model.add_constraint(std::move(c));
  }
  return model;
}

TEST(SolveMip, KnapsackToy) {
  // max 5a + 4b + 3c  s.t.  2a + 3b + c <= 4, written as a minimization.
  LinearModel model;
  const int a = model.add_binary(-5.0, "a");
  const int b = model.add_binary(-4.0, "b");
  const int c = model.add_binary(-3.0, "c");
  model.add_constraint({{{a, 2.0}, {b, 3.0}, {c, 1.0}}, Sense::kLessEqual, 4.0, "weight"});
  const MipSolution mip = solve_mip(model);
  ASSERT_EQ(mip.status, MipStatus::kOptimal);
  EXPECT_NEAR(mip.objective, -8.0, 1e-9);
  EXPECT_NEAR(*oracle::enumerate_binary_optimum(model), -8.0, 1e-12);
  EXPECT_EQ(mip.assignment, (std::vector<double>{1.0, 0.0, 1.0}));
}

TEST(SolveMip, MatchesEnumerationOnRandomBinaryModels) {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 200; ++t) {
    const int vars = std::uniform_int_distribution<int>(2, 9)(rng);
    const int rows = std::uniform_int_distribution<int>(1, 4)(rng);
    const LinearModel model = random_binary_model(rng, vars, rows);
    const std::optional<double> expected = oracle::enumerate_binary_optimum(model);
    const MipSolution mip = solve_mip(model);
    if (!expected) {
      EXPECT_EQ(mip.status, MipStatus::kInfeasible) << "model " << t;
      continue;
    }
    ASSERT_EQ(mip.status, MipStatus::kOptimal) << "model " << t;
    EXPECT_NEAR(mip.objective, *expected, 1e-9) << "model " << t;
    EXPECT_NEAR(model.objective(mip.assignment), mip.objective, 1e-9);
    for (const auto& row : model.constraints()) EXPECT_LE(row.violation(mip.assignment), 1e-9);
    EXPECT_LE(mip.best_bound, mip.objective + 1e-9);
  }
}

TEST(SolveMip, PoolRowsGiveTheSameOptimum) {
  std::mt19937_64 rng(59);
  for (int t = 0; t < 100; ++t) {
    const LinearModel plain = random_binary_model(rng, 8, 4);
    LinearModel pooled;
    for (const auto& v : plain.variables()) pooled.add_variable(v);
    for (std::size_t r = 0; r < plain.constraints().size(); ++r) {
      pooled.add_constraint(plain.constraints()[r], r % 2 == 1);
    }
    MipOptions options;
    options.pool_batch = 1;
    const MipSolution a = solve_mip(plain);
    const MipSolution b = solve_mip(pooled, options);
    ASSERT_EQ(a.status, b.status) << "model " << t;
    if (a.status == MipStatus::kOptimal) {
      EXPECT_NEAR(a.objective, b.objective, 1e-9);
    }
  }
}

TEST(SolveMip, LazyRowsMatchAnExplicitModel) {
  // Lazily forbid picking two adjacent items out of a ring of ten.
  constexpr int kItems = 10;
  LinearModel lazy_model;
  for (int v = 0; v < kItems; ++v) lazy_model.add_binary(-1.0 - 0.1 * v);
  LinearModel full_model = lazy_model;
  for (int v = 0; v < kItems; ++v) {
    full_model.add_constraint(
        {{{v, 1.0}, {(v + 1) % kItems, 1.0}}, Sense::kLessEqual, 1.0, ""});
  }
  int calls = 0;
  MipOptions options;
  options.lazy = [&](std::span<const double> x, bool) {
    ++calls;
    std::vector<Constraint> cuts;
    for (int v = 0; v < kItems; ++v) {
      const int w = (v + 1) % kItems;
      if (x[static_cast<std::size_t>(v)] + x[static_cast<std::size_t>(w)] > 1.0 + 1e-9) {
        cuts.push_back({{{v, 1.0}, {w, 1.0}}, Sense::kLessEqual, 1.0, ""});
      }
    }
    return cuts;
  };
  const MipSolution lazy = solve_mip(lazy_model, options);
  const MipSolution full = solve_mip(full_model);
  ASSERT_EQ(lazy.status, MipStatus::kOptimal);
  ASSERT_EQ(full.status, MipStatus::kOptimal);
  EXPECT_NEAR(lazy.objective, full.objective, 1e-9);
  EXPECT_NEAR(full.objective, *oracle::enumerate_binary_optimum(full_model), 1e-9);
  EXPECT_GT(calls, 0);
  EXPECT_GT(lazy.lazy_rows, 0);
}

TEST(SolveMip, CutoffReportsInfeasibleWhenNothingIsBetter) {
  LinearModel model;
  const int a = model.add_binary(1.0);
  const int b = model.add_binary(1.0);
  model.add_constraint({{{a, 1.0}, {b, 1.0}}, Sense::kGreaterEqual, 1.0, ""});
  MipOptions options;
  options.cutoff = 1.0;
  EXPECT_EQ(solve_mip(model, options).status, MipStatus::kInfeasible);
  options.cutoff = 1.5;
  const MipSolution better = solve_mip(model, options);
  ASSERT_EQ(better.status, MipStatus::kOptimal);
  EXPECT_NEAR(better.objective, 1.0, 1e-12);
}

TEST(SolveMip, InitialSolutionIsKeptWhenOptimal) {
  LinearModel model;
  const int a = model.add_binary(2.0);
  const int b = model.add_binary(3.0);
  model.add_constraint({{{a, 1.0}, {b, 1.0}}, Sense::kGreaterEqual, 1.0, ""});
  MipOptions options;
  options.initial_solution = std::vector<double>{1.0, 0.0};
  const MipSolution mip = solve_mip(model, options);
  ASSERT_EQ(mip.status, MipStatus::kOptimal);
  EXPECT_EQ(mip.assignment, (std::vector<double>{1.0, 0.0}));
}

TEST(SolveMip, ObjectiveStepKeepsOptimality) {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 60; ++t) {
    const LinearModel model = random_binary_model(rng, 8, 3);
    MipOptions options;
    options.objective_step = 1.0;  // integer costs
    const MipSolution stepped = solve_mip(model, options);
    const std::optional<double> expected = oracle::enumerate_binary_optimum(model);
    if (!expected) {
      EXPECT_EQ(stepped.status, MipStatus::kInfeasible);
      continue;
    }
    ASSERT_EQ(stepped.status, MipStatus::kOptimal);
    EXPECT_NEAR(stepped.objective, *expected, 1e-9);
  }
}

TEST(SolveMip, NodeLimitStopsTheSearch) {
  std::mt19937_64 rng(67);
  LinearModel model;
  for (int v = 0; v < 40; ++v) model.add_binary(1.0 + 0.01 * static_cast<double>(rng() % 100));
  for (int r = 0; r < 30; ++r) {
    Constraint c;
    for (int v = 0; v < 40; ++v) {
      if (rng() % 4 == 0) c.terms.push_back({v, 1.0});
    }
    c.rhs = 2.0;
    model.add_constraint(std::move(c));
  }
  MipOptions options;
  options.node_limit = 1;
  const MipSolution mip = solve_mip(model, options);
  EXPECT_LE(mip.nodes, 2);
  EXPECT_NE(mip.status, MipStatus::kInfeasible);
}

}  // namespace
}  // namespace tdm
