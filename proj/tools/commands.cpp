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


#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "tdm/bnp.hpp"
#include "tdm/heuristics.hpp"
#include "tdm/ilp_direct.hpp"
#include "tdm/io.hpp"
#include "tdm/usecase_gen.hpp"
#include "tdm/verify.hpp"

namespace tdm::cli {

namespace fs = std::filesystem;

namespace {

Branching parse_branching(const std::string& name) {
  if (name == "sequential") return Branching::kSequential;
  if (name == "max-probability") return Branching::kMaxProbability;
  throw std::invalid_argument("unknown branching strategy '" + name +
                              "' (expected sequential or max-probability)");
}

// Independent run seeds derived from the user seed and the run index.
std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq sequence{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(index)};
  std::uint32_t words[2];
  sequence.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

SolveResult best_heuristic_run(const ProblemInstance& instance, const MethodOptions& options) {
  const int runs = std::max(1, options.heuristic_runs.value_or(1));
  SolveResult best;
  best.status = SolveStatus::kNoFeasible;
  double seconds = 0.0;
  for (int run = 0; run < runs; ++run) {
    HeuristicConfig config;
    config.seed = options.seed + static_cast<std::uint64_t>(run);
    if (options.gap > 0) config.sub_model_gap = options.gap;
    config.time_limit_s = std::max(0.0, options.time_limit_s - seconds);
    SolveResult r = generative(instance, config);
    seconds += r.seconds;
    if (r.objective && (!best.objective || *r.objective < *best.objective)) best = std::move(r);
    if (seconds >= options.time_limit_s) break;
  }
  best.seconds = seconds;
  best.stats["runs"] = runs;
  return best;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    io::write_file(path, text);
  }
}

}  // namespace

bool known_method(const std::string& method) {
  return method == "ilp" || method == "bnp" || method == "heuristic" || method == "continuous";
}

SolveResult run_method(const ProblemInstance& instance, const std::string& method,
                       const MethodOptions& options) {
  if (method == "ilp") {
    IlpSolveOptions solve;
    solve.time_limit_s = options.time_limit_s;
    solve.relative_gap = options.gap;
    return solve_direct(instance, {}, solve);
  }
  if (method == "bnp") {
    BnpConfig config;
    config.time_limit_s = options.time_limit_s;
    config.seed = options.seed;
    config.heuristic_runs = options.heuristic_runs;
    if (options.branching) config.branching = parse_branching(*options.branching);
    return solve_bnp(instance, config);
  }
  if (method == "heuristic") return best_heuristic_run(instance, options);
  if (method == "continuous") return continuous_allocation(instance);
  throw std::invalid_argument("unknown method '" + method +
                              "' (expected ilp, bnp, heuristic or continuous)");
}

int exit_code(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
    case SolveStatus::kFeasible:
      return kExitOk;
    case SolveStatus::kInfeasible:
    case SolveStatus::kNoFeasible:
      return kExitInfeasible;
    case SolveStatus::kTimedOut:
      return kExitTimedOut;
  }
  return kExitError;
}

int cmd_solve(const SolveOptions& options, std::ostream& out, std::ostream& err) {
  ProblemInstance instance;
  try {
    instance = io::parse_instance(io::read_file(options.instance_path));
  } catch (const io::FormatError& e) {
    err << "error: " << options.instance_path << ": " << e.what() << '\n';
    return kExitError;
  }
  SolveResult result;
  try {
    result = run_method(instance, options.method, options.method_options);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  emit(io::result_to_json(result, instance, options.method).dump(2) + "\n", options.out, out);
  return exit_code(result.status);
}

int cmd_generate(const GenerateOptions& options, std::ostream& out, std::ostream& err) {
  UseCaseClass cls;
  try {
    cls = parse_use_case_class(options.cls);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  if (options.clients < 1 || options.count < 0) {
    err << "error: need at least one client and a non-negative count\n";
    return kExitError;
  }
  const fs::path dir(options.out_dir);
  fs::create_directories(dir);
  std::vector<io::ManifestEntry> entries;
  for (int k = 0; k < options.count; ++k) {
    GenSpec spec = GenSpec::defaults(cls, options.clients,
                                     derived_seed(options.seed, static_cast<std::uint64_t>(k)));
    ProblemInstance instance;
    try {
      instance = generate(spec);
    } catch (const GenerationExhausted& e) {
      err << "warning: instance " << k << " skipped: " << e.what() << '\n';
      continue;
    }
    const std::string name = to_string(cls) + "-n" + std::to_string(options.clients) + "-" +
                             std::to_string(k) + ".json";
    io::write_file(dir / name, io::serialize_instance(instance));
    entries.push_back({name, to_string(cls), instance.client_count(), instance.frame_size,
                       total_rate(instance), latency_load(instance)});
  }
  std::ostringstream manifest;
  io::write_manifest(manifest, entries);
  io::write_file(dir / "manifest.csv", manifest.str());
  out << "wrote " << entries.size() << " instances and " << (dir / "manifest.csv").string()
      << '\n';
  return kExitOk;
}

int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err) {
  try {
    const ProblemInstance instance = io::parse_instance(io::read_file(options.instance_path));
    nlohmann::json doc = io::read_json(options.schedule_path);
    if (doc.is_object() && doc.contains("schedule")) {
      if (doc["schedule"].is_null()) {
        err << "error: " << options.schedule_path << " holds no schedule\n";
        return kExitError;
      }
      doc = doc["schedule"];
    }
    const auto masks = io::schedule_masks_from_json(doc, instance);
    const ScheduleReport report = schedule_feasible(masks, instance);
    emit(io::report_to_json(report, instance).dump(2) + "\n", options.out, out);
    return report.feasible ? kExitOk : kExitInfeasible;
  } catch (const io::FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream& err) {
  for (const auto& m : options.methods) {
    if (!known_method(m)) {
      err << "error: unknown method '" << m << "'\n";
      return kExitError;
    }
  }
  if (options.method_options.branching) {
    try {
      parse_branching(*options.method_options.branching);
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << '\n';
      return kExitError;
    }
  }
  std::vector<io::ManifestEntry> entries;
  try {
    std::ifstream in(options.manifest_path);
    if (!in) throw io::FormatError("cannot read " + options.manifest_path);
    entries = io::read_manifest(in);
  } catch (const io::FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  const fs::path base = fs::path(options.manifest_path).parent_path();

  struct Task {
    std::size_t entry;
    std::string method;
  };
  std::vector<Task> tasks;
  for (std::size_t e = 0; e < entries.size(); ++e) {
    for (const auto& m : options.methods) tasks.push_back({e, m});
  }
  std::vector<io::BenchRow> rows(tasks.size());
  std::vector<std::string> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      const auto& entry = entries[tasks[t].entry];
      io::BenchRow& row = rows[t];
      row.instance = entry.path;
      row.method = tasks[t].method;
      try {
        const fs::path path = fs::path(entry.path).is_absolute() ? fs::path(entry.path)
                                                                 : base / entry.path;
        const ProblemInstance instance = io::parse_instance(io::read_file(path));
        const SolveResult result = run_method(instance, tasks[t].method, options.method_options);
        row.status = to_string(result.status);
        row.objective = result.objective;
        row.bound = result.best_bound;
        row.seconds = result.seconds;
      } catch (const std::exception& e) {
        row.status = "Error";
        errors[t] = entry.path + " (" + row.method + "): " + e.what();
      }
    }
  };
  const int workers = std::max(1, std::min<int>(options.workers, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (!e.empty()) err << "warning: " << e << '\n';
  }

  const auto summaries = io::summarize(rows);
  std::ostringstream csv;
  io::write_bench_csv(csv, rows, summaries);
  emit(csv.str(), options.out, out);
  return kExitOk;
}

}  // namespace tdm::cli
