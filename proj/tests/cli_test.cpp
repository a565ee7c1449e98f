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


#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "commands.hpp"
#include "oracles.hpp"
#include "tdm/io.hpp"
#include "tdm/usecase_gen.hpp"

namespace tdm {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const fs::path kTwoClient = fs::path(TDM_DATA_DIR) / "instances" / "two-client.json";

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("tdm-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    io::write_file(dir_ / name, text);
    return dir_ / name;
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) rows.push_back(io::split_csv_line(line));
  return rows;
}

TEST(ExitCode, StatusMapping) {
  EXPECT_EQ(cli::exit_code(SolveStatus::kOptimal), cli::kExitOk);
  EXPECT_EQ(cli::exit_code(SolveStatus::kFeasible), cli::kExitOk);
  EXPECT_EQ(cli::exit_code(SolveStatus::kInfeasible), cli::kExitInfeasible);
  EXPECT_EQ(cli::exit_code(SolveStatus::kNoFeasible), cli::kExitInfeasible);
  EXPECT_EQ(cli::exit_code(SolveStatus::kTimedOut), cli::kExitTimedOut);
}

TEST_F(CliTest, SolveTwoClientWithEveryExactMethod) {
  for (const std::string method : {"ilp", "bnp"}) {
    out_.str("");
    cli::SolveOptions options;
    options.instance_path = kTwoClient.string();
    options.method = method;
    ASSERT_EQ(cli::cmd_solve(options, out_, err_), cli::kExitOk) << err_.str();
    const json result = json::parse(out_.str());
    EXPECT_EQ(result["status"], "Optimal");
    EXPECT_EQ(result["objective"], "0.8");
    EXPECT_EQ(result["method"], method);
  }
}

TEST_F(CliTest, ContinuousOnTwoClientExitsInfeasible) {
  cli::SolveOptions options;
  options.instance_path = kTwoClient.string();
  options.method = "continuous";
  EXPECT_EQ(cli::cmd_solve(options, out_, err_), cli::kExitInfeasible);
  EXPECT_EQ(json::parse(out_.str())["status"], "NoFeasible");
}

TEST_F(CliTest, SolveRejectsBadInputs) {
  cli::SolveOptions missing;
  missing.instance_path = (dir_ / "missing.json").string();
  EXPECT_EQ(cli::cmd_solve(missing, out_, err_), cli::kExitError);

  cli::SolveOptions garbage;
  garbage.instance_path = write("bad.json", "{\"frame_size\": 4}").string();
  EXPECT_EQ(cli::cmd_solve(garbage, out_, err_), cli::kExitError);

  cli::SolveOptions method;
  method.instance_path = kTwoClient.string();
  method.method = "simplex";
  EXPECT_EQ(cli::cmd_solve(method, out_, err_), cli::kExitError);

  cli::SolveOptions branching;
  branching.instance_path = kTwoClient.string();
  branching.method_options.branching = "random";
  EXPECT_EQ(cli::cmd_solve(branching, out_, err_), cli::kExitError);
  EXPECT_FALSE(err_.str().empty());
}

TEST_F(CliTest, SolveOutputsPassVerification) {
  std::mt19937_64 rng(163);
  int solved = 0;
  for (int t = 0; t < 12; ++t) {
    const ProblemInstance instance = oracle::random_instance(rng, 3, 4, 12);
    const fs::path instance_path =
        write("instance-" + std::to_string(t) + ".json", io::serialize_instance(instance));
    for (const std::string method : {"ilp", "bnp", "heuristic", "continuous"}) {
      cli::SolveOptions solve;
      solve.instance_path = instance_path.string();
      solve.method = method;
      solve.out = (dir_ / ("result-" + std::to_string(t) + "-" + method + ".json")).string();
      const int code = cli::cmd_solve(solve, out_, err_);
      if (code != cli::kExitOk) continue;
      ++solved;
      cli::VerifyOptions verify;
      verify.instance_path = instance_path.string();
      verify.schedule_path = solve.out;
      EXPECT_EQ(cli::cmd_verify(verify, out_, err_), cli::kExitOk) << method << " " << t;
    }
  }
  EXPECT_GT(solved, 10);
}

TEST_F(CliTest, VerifyReportsCollisionsAndLatencyWitnesses) {
  const fs::path collision = write("collision.json", R"({"slots": [["c1", "c2"], "c1", null,
      null, null, null, null, null, null, "c2"]})");
  cli::VerifyOptions options;
  options.instance_path = kTwoClient.string();
  options.schedule_path = collision.string();
  EXPECT_EQ(cli::cmd_verify(options, out_, err_), cli::kExitInfeasible);
  const json report = json::parse(out_.str());
  ASSERT_FALSE(report["collisions"].empty());
  EXPECT_EQ(report["collisions"][0]["slot"], 1);

  const fs::path lone = write("lone.json", R"({"frame_size": 10,
      "clients": [{"name": "c", "rate": "0.3", "latency_slots": "4"}]})");
  const fs::path gap = write("gap.json", R"({"slots": ["c", null, null, null, "c", "c",
      null, null, null, null]})");
  out_.str("");
  options.instance_path = lone.string();
  options.schedule_path = gap.string();
  EXPECT_EQ(cli::cmd_verify(options, out_, err_), cli::kExitInfeasible);
  const json witness = json::parse(out_.str())["clients"][0]["violations"][0];
  EXPECT_EQ(witness["kind"], "latency");
  EXPECT_EQ(witness["start"], 7);
  EXPECT_EQ(witness["duration"], 8);
}

TEST_F(CliTest, VerifyRejectsMismatchedFrames) {
  const fs::path wrong = write("wrong.json", R"({"slots": ["c1", "c2", null]})");
  cli::VerifyOptions options;
  options.instance_path = kTwoClient.string();
  options.schedule_path = wrong.string();
  EXPECT_EQ(cli::cmd_verify(options, out_, err_), cli::kExitError);
}

TEST_F(CliTest, GenerateIsDeterministicAndHonorsTheWindow) {
  cli::GenerateOptions options;
  options.cls = "BD";
  options.clients = 8;
  options.count = 4;
  options.seed = 7;
  options.out_dir = (dir_ / "first").string();
  ASSERT_EQ(cli::cmd_generate(options, out_, err_), cli::kExitOk);
  options.out_dir = (dir_ / "second").string();
  ASSERT_EQ(cli::cmd_generate(options, out_, err_), cli::kExitOk);

  std::ifstream manifest_stream(dir_ / "first" / "manifest.csv");
  const auto entries = io::read_manifest(manifest_stream);
  ASSERT_EQ(entries.size(), 4u);
  for (const auto& entry : entries) {
    const std::string first = io::read_file(dir_ / "first" / entry.path);
    EXPECT_EQ(first, io::read_file(dir_ / "second" / entry.path));
    const ProblemInstance instance = io::parse_instance(first);
    EXPECT_GE(total_rate(instance), Rational(4, 5));
    EXPECT_LE(total_rate(instance), Rational(19, 20));
    EXPECT_EQ(entry.total_rate, total_rate(instance));
    EXPECT_EQ(entry.latency_load, latency_load(instance));
    EXPECT_EQ(entry.cls, "BD");
  }
  EXPECT_EQ(io::read_file(dir_ / "first" / "manifest.csv"),
            io::read_file(dir_ / "second" / "manifest.csv"));
}

TEST_F(CliTest, GenerateCountZeroAndBadClass) {
  cli::GenerateOptions options;
  options.count = 0;
  options.out_dir = dir_.string();
  ASSERT_EQ(cli::cmd_generate(options, out_, err_), cli::kExitOk);
  EXPECT_EQ(io::read_file(dir_ / "manifest.csv"), "path,class,n,f,total_rate,latency_load\n");
  options.cls = "XD";
  EXPECT_EQ(cli::cmd_generate(options, out_, err_), cli::kExitError);
}

TEST_F(CliTest, BenchWritesRunAndSummaryRows) {
  cli::GenerateOptions generate;
  generate.cls = "BD";
  generate.count = 2;
  generate.seed = 3;
  generate.out_dir = dir_.string();
  ASSERT_EQ(cli::cmd_generate(generate, out_, err_), cli::kExitOk);

  cli::BenchOptions bench;
  bench.manifest_path = (dir_ / "manifest.csv").string();
  bench.methods = {"bnp", "continuous"};
  bench.method_options.time_limit_s = 60;
  bench.workers = 2;
  out_.str("");
  ASSERT_EQ(cli::cmd_bench(bench, out_, err_), cli::kExitOk) << err_.str();
  const auto rows = csv_rows(out_.str());
  ASSERT_EQ(rows.size(), 1u + 4u + 2u);
  for (const auto& row : rows) EXPECT_EQ(row.size(), 9u);
  for (std::size_t r = 1; r <= 4; ++r) {
    EXPECT_EQ(rows[r][0], "run");
    if (rows[r][2] == "continuous") {
      EXPECT_EQ(rows[r][3], "NoFeasible");
    }
  }
  EXPECT_EQ(rows[5][0], "summary");
  EXPECT_EQ(rows[6][2], "continuous");
  EXPECT_EQ(rows[6][8], "2");
}

TEST_F(CliTest, BenchHandlesEmptyManifestsAndBadMethods) {
  const fs::path manifest = write("manifest.csv", "path,class,n,f,total_rate,latency_load\n");
  cli::BenchOptions bench;
  bench.manifest_path = manifest.string();
  ASSERT_EQ(cli::cmd_bench(bench, out_, err_), cli::kExitOk);
  EXPECT_EQ(out_.str(), "kind,instance,method,status,objective,bound,distance,seconds,failures\n");
  bench.methods = {"bnp", "annealing"};
  EXPECT_EQ(cli::cmd_bench(bench, out_, err_), cli::kExitError);
}

TEST_F(CliTest, BenchRecordsUnreadableInstancesAndContinues) {
  const fs::path manifest = write("manifest.csv",
                                  "path,class,n,f,total_rate,latency_load\n"
                                  "missing.json,BD,8,64,0.9,0.5\n");
  cli::BenchOptions bench;
  bench.manifest_path = manifest.string();
  bench.methods = {"heuristic"};
  ASSERT_EQ(cli::cmd_bench(bench, out_, err_), cli::kExitOk);
  const auto rows = csv_rows(out_.str());
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1][3], "Error");
  EXPECT_NE(err_.str().find("missing.json"), std::string::npos);
}

}  // namespace
}  // namespace tdm
