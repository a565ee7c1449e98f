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


#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "tdm/io.hpp"

namespace {

void add_method_flags(CLI::App* cmd, tdm::cli::MethodOptions& options) {
  cmd->add_option("--time-limit", options.time_limit_s, "Time limit per solve in seconds")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--seed", options.seed, "Seed for the randomized heuristic")
      ->capture_default_str();
  cmd->add_option("--gap", options.gap,
                  "Relative optimality gap for ilp, sub-model gap for heuristic")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--branching", options.branching, "bnp branching strategy")
      ->check(CLI::IsMember({"sequential", "max-probability"}));
  cmd->add_option("--heuristic-runs", options.heuristic_runs,
                  "Heuristic runs (bnp warm start or the heuristic method)")
      ->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimal-allocation TDM schedules under latency-rate requirements"};
  app.require_subcommand(1);

  tdm::cli::SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance and print the result JSON");
  solve_cmd->add_option("instance", solve.instance_path, "Instance JSON file")->required();
  solve_cmd->add_option("--method", solve.method, "Solution method")
      ->check(CLI::IsMember({"ilp", "bnp", "heuristic", "continuous"}))
      ->capture_default_str();
  add_method_flags(solve_cmd, solve.method_options);
  solve_cmd->add_option("--out", solve.out, "Write the result JSON here instead of stdout");

  tdm::cli::GenerateOptions generate;
  auto* gen_cmd = app.add_subcommand("generate", "Generate synthetic instances and a manifest");
  gen_cmd->add_option("--class", generate.cls, "Use-case class")
      ->check(CLI::IsMember({"BD", "LD", "MD"}))
      ->capture_default_str();
  gen_cmd->add_option("--n", generate.clients, "Clients per instance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen_cmd->add_option("--count", generate.count, "Number of instances")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  gen_cmd->add_option("--seed", generate.seed, "Batch seed")->capture_default_str();
  gen_cmd->add_option("--out", generate.out_dir, "Output directory")->capture_default_str();

  tdm::cli::VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check a schedule against an instance");
  verify_cmd->add_option("instance", verify.instance_path, "Instance JSON file")->required();
  verify_cmd->add_option("schedule", verify.schedule_path,
                         "Schedule JSON, or a solve result holding one")
      ->required();
  verify_cmd->add_option("--out", verify.out, "Write the report here instead of stdout");

  tdm::cli::BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run methods over a manifest and emit CSV");
  bench_cmd->add_option("manifest", bench.manifest_path, "Manifest CSV from generate")
      ->required();
  bench_cmd->add_option("--method", bench.methods, "Methods to run (repeat or comma-separate)")
      ->delimiter(',')
      ->check(CLI::IsMember({"ilp", "bnp", "heuristic", "continuous"}))
      ->capture_default_str();
  add_method_flags(bench_cmd, bench.method_options);
  bench_cmd->add_option("--workers", bench.workers, "Instances solved in parallel")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--out", bench.out, "Write the CSV here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_cmd->parsed()) return tdm::cli::cmd_solve(solve, std::cout, std::cerr);
    if (gen_cmd->parsed()) return tdm::cli::cmd_generate(generate, std::cout, std::cerr);
    if (verify_cmd->parsed()) return tdm::cli::cmd_verify(verify, std::cout, std::cerr);
    if (bench_cmd->parsed()) return tdm::cli::cmd_bench(bench, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return tdm::cli::kExitError;
  }
  return tdm::cli::kExitError;
}
