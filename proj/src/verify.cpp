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

#include "adiastep/verify.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

#include "adiastep/error.hpp"
#include "adiastep/parallel.hpp"

namespace adiastep::verify {

namespace {

int resolve_threads(int threads) { return threads > 0 ? threads : default_thread_count(); }

std::vector<double> eigenvalues_of(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ConvergenceError("dense eigensolver failed");
  return {solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size()};
}

CheckResult finish(std::string name, double deviation, double tolerance, std::size_t evaluations) {
  CheckResult r;
  r.name = std::move(name);
  r.max_deviation = deviation;
  r.tolerance = tolerance;
  r.passed = std::isfinite(deviation) && deviation <= tolerance;
  r.evaluations = evaluations;
  return r;
}

double grid_s(int j, int points) {
  return j + 1 == points ? 1.0 : static_cast<double>(j) / (points - 1);
}

}  // namespace

std::vector<double> full_spectrum(const Hamiltonian& h, int cap) {
  const int n = h.qubits();
  if (!h.is_real()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.to_dense(cap), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw ConvergenceError("dense eigensolver failed");
    return {solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size()};
  }
  const Eigen::MatrixXd dense = h.to_dense_real(cap);
  if (!h.commutes_with_parity() || n < 2) return eigenvalues_of(dense);

  const std::size_t dim = h.dimension();
  const std::size_t flip = dim - 1;
  std::vector<Eigen::Index> reps;
  for (std::size_t z = 0; z < dim; ++z) {
    if (z < (z ^ flip)) reps.push_back(static_cast<Eigen::Index>(z));
  }
  const auto half = static_cast<Eigen::Index>(reps.size());
  std::vector<double> all;
  for (int sign : {1, -1}) {
    Eigen::MatrixXd block(half, half);
    for (Eigen::Index a = 0; a < half; ++a) {
      const Eigen::Index za = reps[a];
      const Eigen::Index za_bar = za ^ static_cast<Eigen::Index>(flip);
      for (Eigen::Index b = 0; b < half; ++b) {
        const Eigen::Index zb = reps[b];
        const Eigen::Index zb_bar = zb ^ static_cast<Eigen::Index>(flip);
        block(a, b) = 0.5 * (dense(za, zb) + dense(za_bar, zb_bar) +
                             sign * (dense(za, zb_bar) + dense(za_bar, zb)));
      }
    }
    const auto part = eigenvalues_of(block);
    all.insert(all.end(), part.begin(), part.end());
  }
  std::sort(all.begin(), all.end());
  return all;
}

double containment_deviation(std::span<const analytic::AnalyticLevel> levels,
                             std::span<const double> eigenvalues, double tolerance) {
  std::vector<double> expected;
  for (const auto& l : levels) expected.insert(expected.end(), l.multiplicity, l.value);
  std::sort(expected.begin(), expected.end());
  std::vector<bool> used(eigenvalues.size(), false);
  double worst = 0.0;
  std::size_t j = 0;
  for (double a : expected) {
    while (j < eigenvalues.size() && (used[j] || eigenvalues[j] < a - tolerance)) ++j;
    if (j < eigenvalues.size() && std::abs(eigenvalues[j] - a) <= tolerance) {
      worst = std::max(worst, std::abs(eigenvalues[j] - a));
      used[j] = true;
      ++j;
      continue;
    }
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
      if (!used[i]) nearest = std::min(nearest, std::abs(eigenvalues[i] - a));
    }
    worst = std::max(worst, nearest);
  }
  return worst;
}

CheckResult check_segment_levels(const std::string& name, const models::InterpolationPath& path,
                                 std::span<const int> segments, const LevelFormula& formula,
                                 const VerifyOptions& options) {
  if (options.s_points < 2) throw InvalidArgument("verification needs at least 2 s-points");
  const std::size_t per = static_cast<std::size_t>(options.s_points);
  const std::size_t total = per * segments.size();
  std::vector<double> deviation(total, 0.0);
  parallel_for(total, resolve_threads(options.threads), [&](std::size_t i) {
    const int k = segments[i / per];
    const double s = grid_s(static_cast<int>(i % per), options.s_points);
    const auto levels = analytic::truncate_kappa(formula(s), options.max_kappa);
    const auto spectrum = full_spectrum(path.segment_hamiltonian(k, s));
    deviation[i] = containment_deviation(levels, spectrum, options.tolerance);
  });
  const double worst = total == 0 ? 0.0 : *std::max_element(deviation.begin(), deviation.end());
  return finish(name, worst, options.tolerance, total);
}

std::vector<int> representative_mid_steps(int n) {
  std::vector<int> ks{1, n / 2, n - 2};
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  std::erase_if(ks, [&](int k) { return k < 1 || k > n - 2; });
  return ks;
}

CheckResult check_ising_first_step(int n, const VerifyOptions& options) {
  models::PathParams p;
  p.n = n;
  const auto path = models::make_path(models::Family::IsingStepwise, p);
  const std::vector<int> segs{0};
  return check_segment_levels(
      "ising-first-step n=" + std::to_string(n), path, segs,
      [n](double s) { return analytic::ising_first_step_levels(n, s); }, options);
}

CheckResult check_ising_mid_steps(int n, const VerifyOptions& options) {
  models::PathParams p;
  p.n = n;
  const auto path = models::make_path(models::Family::IsingStepwise, p);
  const auto segs = representative_mid_steps(n);
  return check_segment_levels(
      "ising-mid-step n=" + std::to_string(n), path, segs,
      [n](double s) { return analytic::ising_mid_step_levels(n, s); }, options);
}

CheckResult check_cluster1d_steps(int n, const VerifyOptions& options) {
  models::PathParams p;
  p.n = n;
  const auto path = models::make_path(models::Family::Cluster1dStepwise, p);
  auto segs = representative_mid_steps(n);
  segs.insert(segs.begin(), 0);
  return check_segment_levels(
      "cluster1d-step n=" + std::to_string(n), path, segs,
      [n](double s) { return analytic::cluster1d_step_levels(n, s); }, options);
}

CheckResult check_cluster2d_two_link(int width, int height, const VerifyOptions& options) {
  return check_cluster2d_two_link(models::lattice_build_order(width, height), options);
}

CheckResult check_cluster2d_two_link(const models::BuildOrder& order, const VerifyOptions& options) {
  models::PathParams p;
  p.width = order.width;
  p.height = order.height;
  p.build_order = order;
  const auto path = models::make_path(models::Family::Cluster2dStepwise, p);
  std::vector<int> segs;
  for (std::size_t k = 0; k < order.steps.size(); ++k) {
    if (order.steps[k].links.size() == 2) segs.push_back(static_cast<int>(k));
  }
  const int n = order.node_count();
  return check_segment_levels(
      "cluster2d-two-link " + std::to_string(order.width) + "x" + std::to_string(order.height),
      path, segs, [n](double s) { return analytic::cluster2d_two_link_lowest(n, s); }, options);
}

CheckResult check_ising_linear_min_gap(int n, const VerifyOptions& options) {
  models::PathParams p;
  p.n = n;
  const auto path = models::make_path(models::Family::IsingLinear, p);
  auto scan = options.scan;
  scan.threads = options.threads;
  const auto curve = spectra::gap_scan(path, spectra::Sector::Even, scan);
  const double dev = std::abs(curve.minimum.gap - analytic::ising_linear_min_gap(n));
  return finish("ising-linear-min-gap n=" + std::to_string(n), dev, options.tolerance, 1);
}

CheckResult check_ec3_projector(const ec3::Instance& instance, std::span<const int> order,
                                const VerifyOptions& options) {
  models::PathParams p;
  p.n = instance.n;
  p.instance = &instance;
  p.clause_order.assign(order.begin(), order.end());
  const auto path = models::make_path(models::Family::Ec3Projector, p);
  const auto chain = ec3::solution_counts(instance, order);
  const auto gaps = ec3::path_gaps(chain);
  const int segments = path.segment_count();
  const std::size_t per = static_cast<std::size_t>(options.s_points);
  std::vector<double> deviation(static_cast<std::size_t>(segments) * per, 0.0);
  const int threads = resolve_threads(options.threads);
  const int count = std::min<std::size_t>(3, path.node(0).dimension());
  parallel_for(deviation.size(), threads, [&](std::size_t i) {
    const int k = static_cast<int>(i / per);
    const double s = grid_s(static_cast<int>(i % per), options.s_points);
    const auto [l0, l1] = analytic::projector_two_level(gaps.gaps[k], s);
    const auto r = spectra::lowest_eigenpairs(path.segment_hamiltonian(k, s), count, false,
                                              options.scan.solver);
    std::vector<double> expected{l0, l1, 1.0};
    expected.resize(count);
    std::sort(expected.begin(), expected.end());
    double worst = 0.0;
    for (int j = 0; j < count; ++j) worst = std::max(worst, std::abs(r.eigenvalues[j] - expected[j]));
    deviation[i] = worst;
  });
  double worst = deviation.empty() ? 0.0 : *std::max_element(deviation.begin(), deviation.end());
  auto scan = options.scan;
  scan.threads = threads;
  for (int k = 0; k < segments; ++k) {
    const auto m = spectra::segment_min_gap(path, k, spectra::Sector::All, scan);
    worst = std::max(worst, std::abs(m.gap - gaps.gaps[k]));
  }
  return finish("ec3-projector n=" + std::to_string(instance.n), worst, options.tolerance,
                deviation.size() + segments);
}

std::vector<CheckResult> verify_family(models::Family family, const models::PathParams& params,
                                       const VerifyOptions& options) {
  using models::Family;
  switch (family) {
    case Family::IsingLinear:
      return {check_ising_linear_min_gap(params.n, options)};
    case Family::IsingStepwise:
      return {check_ising_first_step(params.n, options), check_ising_mid_steps(params.n, options)};
    case Family::Cluster1dStepwise:
      return {check_cluster1d_steps(params.n, options)};
    case Family::Cluster2dStepwise:
      if (params.build_order) return {check_cluster2d_two_link(*params.build_order, options)};
      return {check_cluster2d_two_link(params.width, params.height, options)};
    case Family::Ec3Projector: {
      if (params.instance == nullptr) throw InvalidArgument("ec3 verification needs an instance");
      const auto order = params.clause_order.empty() ? ec3::identity_order(*params.instance)
                                                     : params.clause_order;
      return {check_ec3_projector(*params.instance, order, options)};
    }
    case Family::Cluster1dLinear:
      break;
  }
  throw InvalidArgument("no closed-form checks for family '" +
                        std::string(models::family_name(family)) + "'");
}

}  // namespace adiastep::verify
