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

#include <benchmark/benchmark.h>

#include "tdm/bnp.hpp"
#include "tdm/colgen.hpp"
#include "tdm/heuristics.hpp"
#include "tdm/ilp_direct.hpp"
#include "tdm/model.hpp"
#include "tdm/usecase_gen.hpp"
#include "tdm/verify.hpp"

namespace tdm {
namespace {

ProblemInstance two_client() {
  return {10, {{"c1", Rational(1, 2), Rational(3)}, {"c2", Rational(3, 10), Rational(3)}}};
}

SlotMask random_mask(int frame, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SlotMask mask(frame);
  for (int s = 0; s < frame; ++s) mask.set(s, rng() % 3 == 0);
  mask.set(0);
  return mask;
}

void BM_ServiceLatency(benchmark::State& state) {
  const SlotMask mask = random_mask(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(service_latency(mask));
}
BENCHMARK(BM_ServiceLatency)->Arg(64)->Arg(256)->Arg(1024);

void BM_ClientFeasible(benchmark::State& state) {
  const int frame = static_cast<int>(state.range(0));
  const SlotMask mask = random_mask(frame, 2);
  const ClientRequirement req{"c", Rational(1, 4), Rational(frame / 4)};
  for (auto _ : state) benchmark::DoNotOptimize(client_feasible(mask, req, frame));
}
BENCHMARK(BM_ClientFeasible)->Arg(64)->Arg(256);

void BM_PricingZeroDuals(benchmark::State& state) {
  const ProblemInstance instance = generate(GenSpec::defaults(UseCaseClass::kBandwidth, 8, 3));
  const int f = instance.frame_size;
  const DualPrices zero{std::vector<double>(static_cast<std::size_t>(f), 0.0),
                        std::vector<double>(static_cast<std::size_t>(instance.client_count()), 0.0)};
  const DecisionSet decisions(instance.client_count(), f);
  for (auto _ : state) benchmark::DoNotOptimize(price_client(instance, 0, zero, decisions));
}
BENCHMARK(BM_PricingZeroDuals)->Unit(benchmark::kMillisecond);

void BM_TwoClientColumnGeneration(benchmark::State& state) {
  for (auto _ : state) {
    ColumnPool pool(2, 10);
    pool.add(0, SlotMask::from_bits({0, 0, 1, 1, 0, 0, 0, 1, 1, 1}));
    pool.add(1, SlotMask::from_bits({1, 1, 0, 0, 0, 1, 1, 0, 0, 0}));
    benchmark::DoNotOptimize(column_generation(pool, DecisionSet(2, 10), two_client()));
  }
}
BENCHMARK(BM_TwoClientColumnGeneration)->Unit(benchmark::kMicrosecond);

void BM_Generative(benchmark::State& state) {
  const ProblemInstance instance = generate(GenSpec::defaults(UseCaseClass::kBandwidth, 8, 5));
  for (auto _ : state) benchmark::DoNotOptimize(generative(instance));
}
BENCHMARK(BM_Generative)->Unit(benchmark::kMillisecond);

void BM_BranchAndPriceBandwidth(benchmark::State& state) {
  const ProblemInstance instance = generate(GenSpec::defaults(UseCaseClass::kBandwidth, 8, 5));
  for (auto _ : state) benchmark::DoNotOptimize(solve_bnp(instance));
}
BENCHMARK(BM_BranchAndPriceBandwidth)->Unit(benchmark::kMillisecond)->Iterations(3);

void BM_DirectIlpTwoClient(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(solve_direct(two_client()));
}
BENCHMARK(BM_DirectIlpTwoClient)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace tdm

BENCHMARK_MAIN();
