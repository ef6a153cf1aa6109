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

#include "adiastep/cli/config.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>

#include "adiastep/ec3.hpp"
#include "adiastep/error.hpp"
#include "adiastep/models.hpp"
#include "adiastep/spectra.hpp"

namespace adiastep::cli {

std::string command_name(Command c) {
  switch (c) {
    case Command::Spectrum:
      return "spectrum";
    case Command::GapScan:
      return "gap-scan";
    case Command::Evolve:
      return "evolve";
    case Command::Scaling:
      return "scaling";
    case Command::Ec3:
      return "ec3";
    case Command::Verify:
      return "verify";
  }
  return "unknown";
}

namespace {

void add_model_options(CLI::App* sub, RunConfig& c, bool with_family = true) {
  if (with_family) {
    sub->add_option("--family", c.family,
                    "ising-linear, ising-stepwise, cluster1d-linear, cluster1d-stepwise, "
                    "cluster2d-stepwise or ec3-projector");
  }
  sub->add_option("--n", c.n, "Number of qubits");
  sub->add_option("--width", c.width, "2D lattice width");
  sub->add_option("--height", c.height, "2D lattice height");
  sub->add_option("--boundary", c.boundary, "Ising boundary: periodic or open");
  sub->add_option("--lattice", c.lattice_path, "Explicit 2D build-order file");
  sub->add_option("--instance", c.instance_path, "EC3 instance file");
  sub->add_option("--random-n", c.random_n, "Generate a random EC3 instance with this many bits");
  sub->add_option("--order", c.order, "Clause order: given, greedy or random");
  sub->add_option("--dt", c.segment_duration, "Duration of each path segment");
  sub->add_option("--penalty", c.penalty, "Parity penalty strength alpha");
  sub->add_option("--solver", c.method, "Eigensolver: auto, dense or lanczos");
}

}  // namespace

ParseOutcome parse_args(int argc, const char* const* argv) {
  RunConfig c;
  CLI::App app{"Spectra, gaps and adiabatic dynamics of interpolating spin Hamiltonians", "adiastep"};
  app.set_version_flag("--version", std::string(ADIASTEP_VERSION));
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "csv";
  app.add_option("--threads", c.threads, "Worker threads (default: ADIASTEP_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--out", c.out, "Output file (default: standard output)");
  app.add_option("--format", format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", c.seed, "Seed for random instances, orders and solver start vectors");

  auto* spectrum = app.add_subcommand("spectrum", "Lowest levels at one point of the path");
  add_model_options(spectrum, c);
  spectrum->add_option("--s", c.s, "Global path parameter in [0, 1]");
  spectrum->add_option("--count", c.count, "Number of levels");
  spectrum->add_option("--sector", c.sector, "all, even or odd");

  auto* scan = app.add_subcommand("gap-scan", "Gap along the whole path with refined minimum");
  add_model_options(scan, c);
  scan->add_option("--points", c.points, "Grid points per segment");
  scan->add_option("--sector", c.sector, "all, even or odd");

  auto* evolve = app.add_subcommand("evolve", "Adiabatic evolution from the uniform state");
  add_model_options(evolve, c);
  evolve->add_option("--tau", c.tau, "Total runtime");
  evolve->add_option("--accuracy", c.accuracy, "Fidelity convergence threshold for step refinement");

  auto* scaling = app.add_subcommand("scaling", "Runtime needed to reach a target fidelity");
  add_model_options(scaling, c);
  scaling->add_option("--n-list", c.n_list, "System sizes, comma separated")->delimiter(',');
  scaling->add_option("--tau-grid", c.tau_grid, "Increasing runtimes, comma separated")
      ->delimiter(',');
  scaling->add_option("--fidelity", c.target_fidelity, "Target fidelity");
  scaling->add_option("--bisect", c.bisect, "Bisection steps after the grid scan");
  scaling->add_option("--accuracy", c.accuracy, "Fidelity convergence threshold");

  auto* ec3 = app.add_subcommand("ec3", "Solution counts and projector-path gaps");
  ec3->add_option("--instance", c.instance_path, "EC3 instance file");
  ec3->add_option("--random-n", c.random_n, "Generate a random instance with this many bits");
  ec3->add_option("--order", c.order, "Clause order: given, greedy or random");

  auto* verify = app.add_subcommand("verify", "Closed-form levels and gaps against numerics");
  add_model_options(verify, c);
  verify->add_option("--points", c.s_points, "s-points per checked segment");
  verify->add_option("--kappa", c.kappa, "Largest excitation count checked");
  verify->add_option("--tol", c.tolerance, "Allowed deviation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return {std::nullopt, code == 0 ? kExitOk : kExitConfig};
  }

  c.format = format == "json" ? Format::Json : Format::Csv;
  const std::pair<CLI::App*, Command> table[] = {
      {spectrum, Command::Spectrum}, {scan, Command::GapScan}, {evolve, Command::Evolve},
      {scaling, Command::Scaling},   {ec3, Command::Ec3},      {verify, Command::Verify}};
  for (const auto& [sub, cmd] : table) {
    if (sub->parsed()) c.command = cmd;
  }
  if (c.command == Command::Ec3) c.family = "ec3-projector";
  return {c, kExitOk};
}

void validate(const RunConfig& c) {
  const auto family = models::parse_family(c.family);
  spectra::parse_sector(c.sector);
  ec3::parse_order_strategy(c.order);
  if (c.method != "auto" && c.method != "dense" && c.method != "lanczos") {
    throw InvalidArgument("unknown solver '" + c.method + "' (expected auto, dense or lanczos)");
  }
  if (c.boundary != "periodic" && c.boundary != "open") {
    throw InvalidArgument("unknown boundary '" + c.boundary + "' (expected periodic or open)");
  }
  if (c.threads < 0) throw InvalidArgument("--threads must be non-negative");
  if (!(c.segment_duration > 0.0)) throw InvalidArgument("--dt must be positive");
  if (!(c.penalty >= 0.0)) throw InvalidArgument("--penalty must be non-negative");

  const bool sized_by_list = c.command == Command::Scaling;
  if (family == models::Family::Ec3Projector) {
    if (c.instance_path.empty() && c.random_n <= 0) {
      throw InvalidArgument("ec3 needs --instance FILE or --random-n N");
    }
    if (c.instance_path.empty() && c.random_n < 3) {
      throw InvalidArgument("--random-n must be at least 3");
    }
  } else if (family == models::Family::Cluster2dStepwise) {
    if (c.lattice_path.empty() && !sized_by_list && (c.width < 1 || c.height < 1)) {
      throw InvalidArgument("cluster2d-stepwise needs --width and --height (or --lattice)");
    }
  } else if (!sized_by_list && c.n < 2) {
    throw InvalidArgument("--n must be at least 2");
  }
  if (c.n > kMaxQubits) throw InvalidArgument("--n exceeds the supported qubit count");

  switch (c.command) {
    case Command::Spectrum:
      if (!(c.s >= 0.0 && c.s <= 1.0)) throw InvalidArgument("--s must lie in [0, 1]");
      if (c.count < 1) throw InvalidArgument("--count must be positive");
      break;
    case Command::GapScan:
      if (c.points < 2) throw InvalidArgument("--points must be at least 2");
      break;
    case Command::Evolve:
      if (!(c.tau > 0.0)) throw InvalidArgument("--tau must be positive");
      if (!(c.accuracy > 0.0)) throw InvalidArgument("--accuracy must be positive");
      break;
    case Command::Scaling:
      if (c.n_list.empty()) throw InvalidArgument("scaling needs --n-list");
      if (c.tau_grid.empty()) throw InvalidArgument("scaling needs --tau-grid");
      for (std::size_t i = 1; i < c.tau_grid.size(); ++i) {
        if (!(c.tau_grid[i] > c.tau_grid[i - 1])) {
          throw InvalidArgument("--tau-grid must be strictly increasing");
        }
      }
      if (!(c.tau_grid.front() > 0.0)) throw InvalidArgument("--tau-grid values must be positive");
      if (!(c.target_fidelity >= 0.0 && c.target_fidelity <= 1.0)) {
        throw InvalidArgument("--fidelity must lie in [0, 1]");
      }
      if (c.bisect < 0) throw InvalidArgument("--bisect must be non-negative");
      if (family == models::Family::Ec3Projector) {
        throw InvalidArgument("scaling supports the spin-model families only");
      }
      break;
    case Command::Ec3:
      break;
    case Command::Verify:
      if (c.s_points < 2) throw InvalidArgument("--points must be at least 2");
      if (c.kappa < 0) throw InvalidArgument("--kappa must be non-negative");
      if (!(c.tolerance > 0.0)) throw InvalidArgument("--tol must be positive");
      if (family == models::Family::Cluster1dLinear) {
        throw InvalidArgument("verify has no closed-form checks for cluster1d-linear");
      }
      break;
  }
}

std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& c) {
  std::vector<std::pair<std::string, std::string>> out;
  auto put = [&](std::string key, std::string value) { out.emplace_back(std::move(key), std::move(value)); };
  put("command", command_name(c.command));
  put("family", c.family);
  const auto family = models::parse_family(c.family);
  if (family == models::Family::Ec3Projector) {
    if (!c.instance_path.empty()) {
      put("instance", c.instance_path);
    } else {
      put("random_n", fmt::format("{}", c.random_n));
    }
    put("order", c.order);
  } else if (family == models::Family::Cluster2dStepwise) {
    if (!c.lattice_path.empty()) put("lattice", c.lattice_path);
    put("width", fmt::format("{}", c.width));
    put("height", fmt::format("{}", c.height));
  } else if (c.command != Command::Scaling) {
    put("n", fmt::format("{}", c.n));
  }
  if (c.command != Command::Ec3) {
    if (family == models::Family::IsingLinear || family == models::Family::IsingStepwise) {
      put("boundary", c.boundary);
    }
    put("dt", fmt::format("{}", c.segment_duration));
    put("penalty", fmt::format("{}", c.penalty));
    put("solver", c.method);
  }
  switch (c.command) {
    case Command::Spectrum:
      put("s", fmt::format("{}", c.s));
      put("count", fmt::format("{}", c.count));
      put("sector", c.sector);
      break;
    case Command::GapScan:
      put("points", fmt::format("{}", c.points));
      put("sector", c.sector);
      break;
    case Command::Evolve:
      put("tau", fmt::format("{}", c.tau));
      put("accuracy", fmt::format("{}", c.accuracy));
      break;
    case Command::Scaling:
      put("n_list", fmt::format("{}", fmt::join(c.n_list, ",")));
      put("tau_grid", fmt::format("{}", fmt::join(c.tau_grid, ",")));
      put("fidelity", fmt::format("{}", c.target_fidelity));
      put("bisect", fmt::format("{}", c.bisect));
      put("accuracy", fmt::format("{}", c.accuracy));
      break;
    case Command::Ec3:
      break;
    case Command::Verify:
      put("points", fmt::format("{}", c.s_points));
      put("kappa", fmt::format("{}", c.kappa));
      put("tol", fmt::format("{}", c.tolerance));
      break;
  }
  put("seed", fmt::format("{}", c.seed));
  return out;
}

}  // namespace adiastep::cli
