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

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "adiastep/analytic.hpp"
#include "adiastep/ec3.hpp"
#include "adiastep/models.hpp"
#include "adiastep/spectra.hpp"

namespace adiastep::verify {

struct CheckResult {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::size_t evaluations = 0;
};

struct VerifyOptions {
  int s_points = 101;
  int max_kappa = 2;
  double tolerance = 1e-8;
  /// 0 selects default_thread_count().
  int threads = 0;
  /// Grid and refinement settings for minimum-gap checks.
  spectra::ScanOptions scan;
};

/// Every eigenvalue, ascending, from dense diagonalization (split into the
/// two parity blocks when the Hamiltonian has bit-flip symmetry).
std::vector<double> full_spectrum(const Hamiltonian& h, int cap = kDefaultDenseCap);

/// Largest distance between each analytic level (repeated by multiplicity)
/// and its matched eigenvalue. Levels are matched greedily in ascending order;
/// an unmatched level contributes its distance to the nearest unused eigenvalue.
double containment_deviation(std::span<const analytic::AnalyticLevel> levels,
                             std::span<const double> eigenvalues, double tolerance);

using LevelFormula = std::function<std::vector<analytic::AnalyticLevel>(double s)>;

/// Containment of the analytic levels in the numerical spectrum of the given
/// path segments at s_points uniformly spaced s.
CheckResult check_segment_levels(const std::string& name, const models::InterpolationPath& path,
                                 std::span<const int> segments, const LevelFormula& formula,
                                 const VerifyOptions& options);

/// Segments 1, n/2 and n-2 (deduplicated) of an n-qubit chain path.
std::vector<int> representative_mid_steps(int n);

CheckResult check_ising_first_step(int n, const VerifyOptions& options);
CheckResult check_ising_mid_steps(int n, const VerifyOptions& options);
CheckResult check_cluster1d_steps(int n, const VerifyOptions& options);
/// All two-link steps of the snake build order on a width x height grid.
CheckResult check_cluster2d_two_link(int width, int height, const VerifyOptions& options);
/// All two-link steps of an explicit build order.
CheckResult check_cluster2d_two_link(const models::BuildOrder& order, const VerifyOptions& options);
/// Refined even-sector minimum gap of the linear Ising path against 2 sin(pi/2n).
CheckResult check_ising_linear_min_gap(int n, const VerifyOptions& options);
/// Projector segments: spectrum against the two-level formula and refined
/// minimum gap against sqrt(N_{k+1}/N_k).
CheckResult check_ec3_projector(const ec3::Instance& instance, std::span<const int> order,
                                const VerifyOptions& options);

/// The checks that apply to one family (n, lattice or instance from params).
std::vector<CheckResult> verify_family(models::Family family, const models::PathParams& params,
                                       const VerifyOptions& options);

}  // namespace adiastep::verify
