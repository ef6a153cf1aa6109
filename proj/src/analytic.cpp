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

#include "adiastep/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "adiastep/error.hpp"

namespace adiastep::analytic {

namespace {

void check_s(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw InvalidArgument("interpolation parameter outside [0, 1]");
}

void check_n(int n, int min_n) {
  if (n < min_n) throw InvalidArgument("system size must be at least " + std::to_string(min_n));
}

}  // namespace

MomentumGrid MomentumGrid::even_sector(int n) {
  check_n(n, 1);
  MomentumGrid grid{n, {}};
  for (int m = -(n - 1); m < n; ++m) {
    if (m % 2 != 0) grid.values.push_back(std::numbers::pi * m / n);
  }
  if (n % 2 == 1) grid.values.push_back(std::numbers::pi);
  return grid;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

double ising_quasiparticle_energy(int n, double s, double ka) {
  check_n(n, 1);
  check_s(s);
  const double c = std::cos(ka / 2.0);
  return std::sqrt(std::max(0.0, 1.0 - 4.0 * c * c * s * (1.0 - s)));
}

double ising_linear_min_gap(int n) {
  check_n(n, 1);
  return 2.0 * std::sin(std::numbers::pi / (2.0 * n));
}

std::vector<AnalyticLevel> ising_first_step_levels(int n, double s) {
  check_n(n, 3);
  check_s(s);
  const double r = std::sqrt(5.0 * s * s - 8.0 * s + 4.0);
  std::vector<AnalyticLevel> out;
  for (int kappa = 0; kappa <= n - 2; ++kappa) {
    const double shift = -(n - 2) + 2.0 * kappa;
    const auto mult = binomial(n - 2, kappa);
    out.push_back({-r + shift, kappa, "lambda0", mult});
    out.push_back({-s + shift, kappa, "lambda1", mult});
    out.push_back({s + shift, kappa, "lambda2", mult});
    out.push_back({r + shift, kappa, "lambda3", mult});
  }
  return out;
}

std::vector<AnalyticLevel> ising_mid_step_levels(int n, double s) {
  check_n(n, 3);
  check_s(s);
  const double r = std::sqrt(1.0 - 2.0 * s * (1.0 - s));
  std::vector<AnalyticLevel> out;
  for (int kappa = 0; kappa <= n - 2; ++kappa) {
    const double shift = -(n - 2) + 2.0 * kappa;
    const auto mult = 2 * binomial(n - 2, kappa);
    out.push_back({-r + shift, kappa, "lambda-", mult});
    out.push_back({r + shift, kappa, "lambda+", mult});
  }
  return out;
}

std::vector<AnalyticLevel> cluster1d_step_levels(int n, double s) {
  check_n(n, 4);
  check_s(s);
  const double r = 2.0 * std::sqrt(1.0 - 2.0 * s * (1.0 - s));
  std::vector<AnalyticLevel> out;
  for (int kappa = 0; kappa <= n - 2; ++kappa) {
    const double shift = -(n - 2) + 2.0 * kappa;
    const auto mult = binomial(n - 2, kappa);
    out.push_back({-r + shift, kappa, "lambda1", mult});
    out.push_back({shift, kappa, "lambda2", mult});
    out.push_back({shift, kappa, "lambda3", mult});
    out.push_back({r + shift, kappa, "lambda4", mult});
  }
  return out;
}

std::vector<AnalyticLevel> cluster2d_two_link_lowest(int n, double s) {
  check_n(n, 4);
  check_s(s);
  const double u = s * (1.0 - s);
  const double inner =
      4.0 * (1.0 - 2.0 * s) * (1.0 - 2.0 * s) + 25.0 * u * u;
  const double l0 = -std::sqrt(5.0 - 10.0 * u + 2.0 * std::sqrt(inner));
  std::vector<AnalyticLevel> out;
  for (int kappa = 0; kappa <= n - 3; ++kappa) {
    const double shift = -(n - 3) + 2.0 * kappa;
    const auto mult = binomial(n - 3, kappa);
    out.push_back({l0 + shift, kappa, "lambda0", mult});
    out.push_back({-1.0 + shift, kappa, "lambda1", mult});
  }
  return out;
}

std::pair<double, double> projector_two_level(double overlap, double s) {
  if (!(overlap >= 0.0 && overlap <= 1.0)) throw InvalidArgument("overlap outside [0, 1]");
  check_s(s);
  const double d =
      std::sqrt(std::max(0.0, 1.0 - 4.0 * s * (1.0 - s) * (1.0 - overlap * overlap)));
  return {0.5 * (1.0 - d), 0.5 * (1.0 + d)};
}

std::vector<AnalyticLevel> truncate_kappa(std::vector<AnalyticLevel> levels, int max_kappa) {
  std::erase_if(levels, [&](const AnalyticLevel& l) { return l.kappa > max_kappa; });
  return levels;
}

}  // namespace adiastep::analytic
