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
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "tdm/usecase_gen.hpp"

namespace tdm {
namespace {

constexpr UseCaseClass kClasses[] = {UseCaseClass::kBandwidth, UseCaseClass::kLatency,
                                     UseCaseClass::kMixed};

Dominance expected_dominance(UseCaseClass cls) {
  switch (cls) {
    case UseCaseClass::kBandwidth:
      return Dominance::kBandwidth;
    case UseCaseClass::kLatency:
      return Dominance::kLatency;
    case UseCaseClass::kMixed:
      return Dominance::kMixed;
  }
  return Dominance::kBandwidth;
}

TEST(UseCaseClass, NamesRoundTrip) {
  for (const UseCaseClass cls : kClasses) EXPECT_EQ(parse_use_case_class(to_string(cls)), cls);
  EXPECT_EQ(parse_use_case_class("latency"), UseCaseClass::kLatency);
  EXPECT_THROW(parse_use_case_class("XD"), std::invalid_argument);
}

TEST(Interval, BoundsAreInclusiveAndExact) {
  const Interval window{0.8, 0.95};
  EXPECT_TRUE(window.contains(Rational(4, 5)));
  EXPECT_TRUE(window.contains(Rational(19, 20)));
  EXPECT_FALSE(window.contains(Rational(19, 20) + Rational(1, 100000)));
  EXPECT_FALSE(window.contains(Rational(4, 5) - Rational(1, 100000)));
}

TEST(LoadMeasures, TwoClientValues) {
  const ProblemInstance instance{
      10, {{"c1", Rational(1, 2), Rational(3)}, {"c2", Rational(3, 10), Rational(3)}}};
  EXPECT_EQ(total_rate(instance), Rational(4, 5));
  // ceil(10 / 4) for both clients.
  EXPECT_EQ(latency_load(instance), Rational(6, 10));
}

TEST(GenSpec, DefaultsScaleFromTheNearestRow) {
  const GenSpec eight = GenSpec::defaults(UseCaseClass::kBandwidth, 8);
  EXPECT_EQ(eight.frame_size, 64);
  EXPECT_DOUBLE_EQ(eight.rate_range.lo, 0.06);
  EXPECT_DOUBLE_EQ(eight.rate_range.hi, 0.16);
  EXPECT_FALSE(eight.latency_load_window.has_value());
  const GenSpec twelve = GenSpec::defaults(UseCaseClass::kBandwidth, 12);
  EXPECT_EQ(twelve.frame_size, 96);
  EXPECT_DOUBLE_EQ(twelve.rate_range.lo, 0.03 * 16.0 / 12.0);
  EXPECT_TRUE(GenSpec::defaults(UseCaseClass::kLatency, 8).latency_load_window.has_value());
  EXPECT_THROW(GenSpec::defaults(UseCaseClass::kMixed, 0), std::invalid_argument);
}

class GenerateClass : public ::testing::TestWithParam<std::tuple<UseCaseClass, int>> {};

TEST_P(GenerateClass, InstancesHonorEveryWindow) {
  const auto [cls, clients] = GetParam();
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const GenSpec spec = GenSpec::defaults(cls, clients, seed);
    const ProblemInstance instance = generate(spec);
    ASSERT_EQ(instance.client_count(), clients);
    EXPECT_EQ(instance.frame_size, 8 * clients);
    EXPECT_NO_THROW(instance.validate());
    EXPECT_TRUE(spec.total_rate_window.contains(total_rate(instance))) << "seed " << seed;
    if (spec.latency_load_window) {
      EXPECT_TRUE(spec.latency_load_window->contains(latency_load(instance))) << "seed " << seed;
    }
    for (const auto& c : instance.clients) {
      ASSERT_TRUE(c.latency.has_value());
      EXPECT_EQ(dominance_class(c, instance.frame_size), expected_dominance(cls)) << c.name;
      EXPECT_GE(to_double(c.rate), spec.rate_range.lo - 1e-5);
      EXPECT_LE(to_double(c.rate), spec.rate_range.hi + 1e-5);
      if (cls != UseCaseClass::kMixed) {
        // The latency is drawn as 1 / (z * rate) and kept to three decimals.
        const double z = 1.0 / (to_double(*c.latency) * to_double(c.rate));
        const double slack = 0.0006 * z / to_double(*c.latency) + 1e-9;
        EXPECT_GE(z, spec.tightness_range.lo - slack) << c.name;
        EXPECT_LE(z, spec.tightness_range.hi + slack) << c.name;
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(
    Classes, GenerateClass,
    ::testing::Combine(::testing::ValuesIn(kClasses), ::testing::Values(8, 16)),
    [](const auto& info) {
      return to_string(std::get<0>(info.param)) + "_n" + std::to_string(std::get<1>(info.param));
    });

TEST(Generate, DeterministicPerSeed) {
  for (const UseCaseClass cls : kClasses) {
    const ProblemInstance a = generate(GenSpec::defaults(cls, 8, 77));
    const ProblemInstance b = generate(GenSpec::defaults(cls, 8, 77));
    const ProblemInstance c = generate(GenSpec::defaults(cls, 8, 78));
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
  }
}

TEST(Generate, ImpossibleWindowExhaustsTheBudget) {
  GenSpec spec = GenSpec::defaults(UseCaseClass::kBandwidth, 8);
  spec.total_rate_window = {0.1, 0.1};
  spec.max_attempts = 50;
  EXPECT_THROW(generate(spec), GenerationExhausted);
}

TEST(Generate, RejectsUnorderedRanges) {
  GenSpec spec = GenSpec::defaults(UseCaseClass::kBandwidth, 8);
  spec.rate_range = {0.2, 0.1};
  EXPECT_THROW(generate(spec), std::invalid_argument);
}

TEST(FilterFeasible, KeepsSolvedAndDropsInfeasible) {
  const std::vector<ProblemInstance> instances = {
      {10, {{"c1", Rational(1, 2), Rational(3)}, {"c2", Rational(3, 10), Rational(3)}}},
      {4, {{"a", Rational(3, 4), std::nullopt}, {"b", Rational(1, 2), std::nullopt}}},
  };
  for (const FilterMethod method : {FilterMethod::kBnp, FilterMethod::kIlp}) {
    const FilterReport report = filter_feasible(instances, method, 30.0);
    EXPECT_EQ(report.kept, std::vector<int>{0});
    EXPECT_EQ(report.discarded, std::vector<int>{1});
    EXPECT_TRUE(report.timed_out.empty());
  }
}

}  // namespace
}  // namespace tdm
