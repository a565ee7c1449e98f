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


#ifndef TDM_TOOLS_COMMANDS_HPP_
#define TDM_TOOLS_COMMANDS_HPP_

// The four tdm subcommands as plain functions, so tests can drive them
// without spawning processes. Each returns the process exit code.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tdm/model.hpp"
#include "tdm/result.hpp"

namespace tdm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;       // parse errors, mismatched inputs
inline constexpr int kExitInfeasible = 2;  // infeasible or no schedule found
inline constexpr int kExitTimedOut = 3;

struct MethodOptions {
  double time_limit_s = 3000.0;
  std::uint64_t seed = 1;
  double gap = 0.0;
  std::optional<std::string> branching;  // "sequential" or "max-probability"
  std::optional<int> heuristic_runs;
};

bool known_method(const std::string& method);

// Methods: "ilp", "bnp", "heuristic", "continuous". Throws
// std::invalid_argument on an unknown method or branching name.
SolveResult run_method(const ProblemInstance& instance, const std::string& method,
                       const MethodOptions& options);

int exit_code(SolveStatus status);

struct SolveOptions {
  std::string instance_path;
  std::string method = "bnp";
  MethodOptions method_options;
  std::string out;  // result JSON path; empty writes to the output stream
};

int cmd_solve(const SolveOptions& options, std::ostream& out, std::ostream& err);

struct GenerateOptions {
  std::string cls = "BD";
  int clients = 8;
  int count = 1;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
};

// Writes <out_dir>/<class>-n<clients>-<index>.json per instance plus
// <out_dir>/manifest.csv.
int cmd_generate(const GenerateOptions& options, std::ostream& out, std::ostream& err);

struct VerifyOptions {
  std::string instance_path;
  std::string schedule_path;  // schedule JSON or a solve result holding one
  std::string out;
};

int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err);

struct BenchOptions {
  std::string manifest_path;
  std::vector<std::string> methods = {"bnp", "heuristic"};
  MethodOptions method_options;
  int workers = 1;
  std::string out;  // CSV path; empty writes to the output stream
};

int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream& err);

}  // namespace tdm::cli

#endif  // TDM_TOOLS_COMMANDS_HPP_
