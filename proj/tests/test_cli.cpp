// Copyright 2026 The adiastep Authors
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

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>
#include <unistd.h>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "adiastep/cli/commands.hpp"
#include "adiastep/cli/config.hpp"

namespace adiastep::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "adiastep");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(ADIASTEP_EXAMPLES_DIR) + "/" + name; }

std::string strip_wall_clock(const std::string& text) {
  std::istringstream in(text);
  std::string line, kept;
  while (std::getline(in, line)) {
    if (line.rfind("# wall_clock_seconds", 0) == 0) continue;
    kept += line + "\n";
  }
  return kept;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("adiastep_test_" + std::to_string(::getpid()) + "_" + name);
}

TEST(Cli, SpectrumCsv) {
  const auto r = invoke({"spectrum", "--family", "ising-linear", "--n", "5", "--s", "0", "--count", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 3U);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"index", "eigenvalue", "sector"}));
  EXPECT_NEAR(std::stod(rows[1][1]), -5.0, 1e-9);
  EXPECT_NEAR(std::stod(rows[2][1]), -3.0, 1e-9);
  EXPECT_NE(r.out.find("# tool: adiastep"), std::string::npos);
  EXPECT_NE(r.out.find("# wall_clock_seconds:"), std::string::npos);
}

TEST(Cli, GapScanWithSidecar) {
  const auto out = temp_file("scan.csv");
  const auto r = invoke({"gap-scan", "--family", "ising-stepwise", "--n", "6", "--points", "21",
                         "--sector", "even", "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream side(out.string() + ".min.json");
  ASSERT_TRUE(side.good());
  const auto j = nlohmann::json::parse(side);
  EXPECT_NEAR(j["summary"]["min_gap"].get<double>(), std::sqrt(2.0), 1e-6);
  EXPECT_TRUE(j.contains("wall_clock_seconds"));
  std::ifstream csv(out);
  std::stringstream buf;
  buf << csv.rdbuf();
  const auto rows = csv_rows(buf.str());
  EXPECT_EQ(rows[0][0], "s");
  EXPECT_EQ(rows.size(), 1U + 6U * 20U + 1U);
  double min_gap = 1e9;
  for (std::size_t i = 1; i < rows.size(); ++i) min_gap = std::min(min_gap, std::stod(rows[i][1]));
  EXPECT_GE(min_gap, std::sqrt(2.0) - 1e-6);
  fs::remove(out);
  fs::remove(out.string() + ".min.json");
}

TEST(Cli, JsonOutput) {
  const auto r = invoke({"--format", "json", "evolve", "--family", "ising-stepwise", "--n", "4",
                         "--tau", "40"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["metadata"]["config"]["command"], "evolve");
  ASSERT_EQ(j["rows"].size(), 1U);
  EXPECT_GT(j["rows"][0]["fidelity"].get<double>(), 0.9);
  EXPECT_TRUE(j.contains("wall_clock_seconds"));
}

TEST(Cli, DeterministicApartFromWallClock) {
  const std::vector<std::string> args{"ec3", "--random-n", "8", "--order", "random", "--seed", "5"};
  const auto a = invoke(args);
  const auto b = invoke(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(strip_wall_clock(a.out), strip_wall_clock(b.out));
}

TEST(Cli, Ec3InstanceFile) {
  const auto r = invoke({"ec3", "--instance", data("implied.ec3"), "--order", "greedy"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(r.out);
  // Header, one row per clause, then the final count.
  ASSERT_EQ(rows.size(), 6U);
  EXPECT_EQ(rows[0][0], "k");
  EXPECT_EQ(rows[1][2], "32");
  EXPECT_NEAR(std::stod(rows[4][3]), 1.0, 1e-12);
  EXPECT_EQ(rows[5][2], "3");
}

TEST(Cli, VerifyExitsZero) {
  const auto r = invoke({"verify", "--family", "cluster1d-stepwise", "--n", "6", "--points", "11"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto lattice = invoke({"verify", "--family", "cluster2d-stepwise", "--lattice",
                               data("grid_2x3.order"), "--points", "5"});
  EXPECT_EQ(lattice.code, 0) << lattice.err;
}

TEST(Cli, VerificationFailureExitCode) {
  const auto r = invoke({"verify", "--family", "ising-stepwise", "--n", "5", "--points", "5",
                         "--tol", "1e-300"});
  EXPECT_EQ(r.code, kExitVerification);
  EXPECT_NE(r.err.find("verification failed"), std::string::npos);
}

TEST(Cli, ConfigurationErrors) {
  EXPECT_EQ(invoke({"ec3", "--instance", "missing.txt"}).code, kExitConfig);
  EXPECT_EQ(invoke({"spectrum", "--family", "bogus", "--n", "4"}).code, kExitConfig);
  EXPECT_EQ(invoke({"spectrum", "--n", "4", "--s", "2"}).code, kExitConfig);
  EXPECT_EQ(invoke({"gap-scan", "--family", "cluster1d-stepwise", "--n", "4", "--sector", "even"}).code,
            kExitConfig);
  EXPECT_EQ(invoke({"scaling", "--n-list", "4", "--tau-grid", "5,2"}).code, kExitConfig);
  EXPECT_EQ(invoke({"--frobnicate"}).code, kExitConfig);
  EXPECT_EQ(invoke({}).code, kExitConfig);
  const auto missing = invoke({"ec3", "--instance", "missing.txt"});
  EXPECT_NE(missing.err.find("missing.txt"), std::string::npos);
}

TEST(Cli, NonConvergenceExitCode) {
  const auto r = invoke({"evolve", "--family", "ising-linear", "--n", "2", "--tau", "30",
                         "--accuracy", "1e-300"});
  EXPECT_EQ(r.code, kExitNonConvergence);
}

TEST(Cli, ToolBinary) {
  const std::string tool = ADIASTEP_TOOL;
  const auto out = temp_file("tool.txt");
  const std::string redirect = " > " + out.string() + " 2>&1";
  auto status = [](int raw) { return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1; };
  EXPECT_EQ(status(std::system((tool + " --version" + redirect).c_str())), 0);
  EXPECT_EQ(status(std::system((tool + " ec3 --instance missing.txt" + redirect).c_str())), kExitConfig);
  EXPECT_EQ(status(std::system((tool + " spectrum --family ising-stepwise --n 4" + redirect).c_str())), 0);
  fs::remove(out);
}

}  // namespace
}  // namespace adiastep::cli
