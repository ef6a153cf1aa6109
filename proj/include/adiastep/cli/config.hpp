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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace adiastep::cli {

enum class Command { Spectrum, GapScan, Evolve, Scaling, Ec3, Verify };
enum class Format { Csv, Json };

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNonConvergence = 3;
inline constexpr int kExitVerification = 4;

struct RunConfig {
  Command command = Command::Spectrum;
  std::string family = "ising-stepwise";
  int n = 0;
  int width = 0;
  int height = 0;
  std::string boundary = "periodic";
  std::string lattice_path;
  std::string instance_path;
  /// Bit count of a generated random instance when no instance file is given.
  int random_n = 0;
  std::string order = "given";
  double segment_duration = 1.0;
  double penalty = 0.0;
  std::string method = "auto";

  double s = 0.5;
  int count = 6;
  int points = 200;
  std::string sector = "all";

  double tau = 10.0;
  double accuracy = 1e-6;

  std::vector<int> n_list;
  std::vector<double> tau_grid;
  double target_fidelity = 0.99;
  int bisect = 0;

  int kappa = 2;
  double tolerance = 1e-8;
  int s_points = 101;

  Format format = Format::Csv;
  std::string out;
  std::uint64_t seed = 1;
  int threads = 0;
};

std::string command_name(Command c);

/// Outcome of argument parsing: a config to run, or an exit code to return
/// immediately (help output or a usage error already reported).
struct ParseOutcome {
  std::optional<RunConfig> config;
  int exit_code = kExitOk;
};

ParseOutcome parse_args(int argc, const char* const* argv);

/// Checks the fields the chosen subcommand relies on. Throws InvalidArgument.
void validate(const RunConfig& config);

/// Key/value echo of the fields relevant to the subcommand, in fixed order.
std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& config);

}  // namespace adiastep::cli
