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
#include <string>
#include <utility>
#include <vector>

namespace adiastep::analytic {

/// Wavenumbers ka = (pi/n)(1 + 2j) with |ka| < pi; for odd n the zone-edge
/// momentum pi completes the set to n values.
struct MomentumGrid {
  int n = 0;
  std::vector<double> values;

  static MomentumGrid even_sector(int n);
};

/// Closed-form level lambda^kappa of one branch with its degeneracy.
struct AnalyticLevel {
  double value = 0.0;
  int kappa = 0;
  std::string branch;
  std::uint64_t multiplicity = 1;
};

std::uint64_t binomial(int n, int k);

/// sqrt(1 - 4 cos^2(ka/2) s (1-s))
double ising_quasiparticle_energy(int n, double s, double ka);

/// 2 sin(pi / 2n)
double ising_linear_min_gap(int n);

/// First Ising step H_0 -> H_1: branches lambda0..lambda3 for kappa = 0..n-2.
std::vector<AnalyticLevel> ising_first_step_levels(int n, double s);

/// Intermediate Ising steps H_k -> H_{k+1}, 1 <= k <= n-2: branches lambda-
/// and lambda+ for kappa = 0..n-2.
std::vector<AnalyticLevel> ising_mid_step_levels(int n, double s);

/// Any 1D cluster step: branches lambda1..lambda4 (lambda2 == lambda3).
std::vector<AnalyticLevel> cluster1d_step_levels(int n, double s);

/// Two-link 2D cluster step: the two lowest branches lambda0, lambda1 for
/// kappa = 0..n-3.
std::vector<AnalyticLevel> cluster2d_two_link_lowest(int n, double s);

/// Nontrivial pair of levels of (1-s)(1 - |a><a|) + s(1 - |b><b|) with
/// |<a|b>| = overlap. All other levels equal 1.
std::pair<double, double> projector_two_level(double overlap, double s);

/// Levels with kappa <= max_kappa.
std::vector<AnalyticLevel> truncate_kappa(std::vector<AnalyticLevel> levels, int max_kappa);

}  // namespace adiastep::analytic
