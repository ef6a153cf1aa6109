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

#include "adiastep/dynamics.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "adiastep/error.hpp"

namespace adiastep::dynamics {

namespace {

using Vec = std::vector<Complex>;

double norm_of(std::span<const Complex> v) {
  double acc = 0.0;
  for (const auto& a : v) acc += std::norm(a);
  return std::sqrt(acc);
}

// exp(-i dt T) e_1 for the symmetric tridiagonal T.
Eigen::VectorXcd tridiagonal_expm_e1(const std::vector<double>& alpha,
                                     const std::vector<double>& beta, double dt) {
  const auto k = static_cast<Eigen::Index>(alpha.size());
  Eigen::VectorXd d(k);
  Eigen::VectorXd e(std::max<Eigen::Index>(0, k - 1));
  for (Eigen::Index i = 0; i < k; ++i) d(i) = alpha[i];
  for (Eigen::Index i = 0; i + 1 < k; ++i) e(i) = beta[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
  tri.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
  const Eigen::MatrixXd& q = tri.eigenvectors();
  Eigen::VectorXcd phase(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    phase(i) = std::exp(Complex(0.0, -dt * tri.eigenvalues()(i))) * q(0, i);
  }
  return q.cast<Complex>() * phase;
}

bool try_krylov_expm(const Hamiltonian& h, double dt, std::span<Complex> psi, double tolerance,
                     int max_dim) {
  const std::size_t dim = psi.size();
  const double beta0 = norm_of(psi);
  if (beta0 == 0.0) return true;
  std::vector<Vec> basis;
  basis.emplace_back(psi.begin(), psi.end());
  for (auto& a : basis[0]) a /= beta0;
  std::vector<double> alpha;
  std::vector<double> beta;
  Vec w(dim);
  const int limit = static_cast<int>(std::min<std::size_t>(max_dim, dim));
  for (int j = 0; j < limit; ++j) {
    h.apply(std::span<const Complex>(basis[j]), std::span<Complex>(w));
    const double a = inner(std::span<const Complex>(basis[j]), std::span<const Complex>(w)).real();
    alpha.push_back(a);
    for (std::size_t i = 0; i < dim; ++i) {
      w[i] -= a * basis[j][i];
      if (j > 0) w[i] -= beta[j - 1] * basis[j - 1][i];
    }
    for (const auto& u : basis) {
      const Complex c = inner(std::span<const Complex>(u), std::span<const Complex>(w));
      for (std::size_t i = 0; i < dim; ++i) w[i] -= c * u[i];
    }
    const double b = norm_of(w);
    const Eigen::VectorXcd c = tridiagonal_expm_e1(alpha, beta, dt);
    const double error = beta0 * b * std::abs(c(j));
    const bool invariant = b <= 1e-14 * (1.0 + std::abs(a));
    if (error < tolerance || invariant || j + 1 == static_cast<int>(dim)) {
      std::fill(psi.begin(), psi.end(), Complex{});
      for (int m = 0; m <= j; ++m) {
        const Complex f = beta0 * c(m);
        for (std::size_t i = 0; i < dim; ++i) psi[i] += f * basis[m][i];
      }
      return true;
    }
    beta.push_back(b);
    Vec next = w;
    for (auto& x : next) x /= b;
    basis.push_back(std::move(next));
  }
  return false;
}

void krylov_expm_impl(const Hamiltonian& h, double dt, std::span<Complex> psi, double tolerance,
                      int max_dim, int depth) {
  Vec backup(psi.begin(), psi.end());
  if (try_krylov_expm(h, dt, psi, tolerance, max_dim)) return;
  if (depth > 30) throw ConvergenceError("Krylov exponential did not converge");
  std::copy(backup.begin(), backup.end(), psi.begin());
  krylov_expm_impl(h, dt / 2, psi, tolerance / 2, max_dim, depth + 1);
  krylov_expm_impl(h, dt / 2, psi, tolerance / 2, max_dim, depth + 1);
}

bool path_has_parity(const models::InterpolationPath& path) {
  return std::all_of(path.nodes().begin(), path.nodes().end(),
                     [](const Hamiltonian& h) { return h.commutes_with_parity(); });
}

void check_state(const models::InterpolationPath& path, const StateVector& psi) {
  if (psi.qubits() != path.qubits()) throw InvalidArgument("state and path qubit counts differ");
}

}  // namespace

void krylov_expm(const Hamiltonian& h, double dt, std::span<Complex> psi, double tolerance,
                 int max_dim) {
  if (psi.size() != h.dimension()) throw InvalidArgument("state dimension mismatch");
  krylov_expm_impl(h, dt, psi, tolerance, std::max(2, max_dim), 0);
}

double fidelity(const StateVector& psi, const StateVector& target) {
  if (psi.qubits() != target.qubits()) throw InvalidArgument("fidelity of states with different sizes");
  return std::norm(inner(target, psi));
}

StateVector default_initial_state(const models::InterpolationPath& path) {
  return StateVector::uniform(path.qubits());
}

StateVector default_target(const models::InterpolationPath& path, const StateVector& psi0,
                           const spectra::SolverOptions& solver) {
  check_state(path, psi0);
  spectra::SolverOptions opts = solver;
  opts.sector = spectra::Sector::All;
  if (path_has_parity(path)) {
    const double p = parity_expectation(psi0);
    if (p > 0.99) opts.sector = spectra::Sector::Even;
    if (p < -0.99) opts.sector = spectra::Sector::Odd;
  }
  const auto& final_h = path.node(path.segment_count());
  auto result = spectra::lowest_eigenpairs(final_h, 1, true, opts);
  return std::move(result.eigenvectors.front());
}

EvolutionResult evolve_fixed(const models::InterpolationPath& path, const StateVector& psi0,
                             double tau, double rate, const StateVector& target,
                             const EvolveOptions& options) {
  check_state(path, psi0);
  check_state(path, target);
  if (!(tau > 0.0)) throw InvalidArgument("runtime tau must be positive");
  if (!(rate > 0.0)) throw InvalidArgument("step rate must be positive");
  const auto scaled = path.with_total_time(tau);
  const bool track_parity = path_has_parity(path);

  static const double kRoot3 = std::sqrt(3.0);
  const double c1 = 0.5 - kRoot3 / 6.0;
  const double c2 = 0.5 + kRoot3 / 6.0;
  const double a1 = (3.0 - 2.0 * kRoot3) / 12.0;
  const double a2 = (3.0 + 2.0 * kRoot3) / 12.0;

  EvolutionResult result;
  result.tau = tau;
  StateVector psi = psi0;
  const double norm0 = psi0.norm();
  const double parity0 = track_parity ? parity_expectation(psi0) : 0.0;

  for (int k = 0; k < scaled.segment_count(); ++k) {
    const double duration = scaled.durations()[k];
    const int steps =
        std::max(options.min_steps_per_segment, static_cast<int>(std::ceil(duration * rate)));
    const double hs = 1.0 / steps;
    const double dt = duration * hs;
    const Hamiltonian& h0 = scaled.node(k);
    const Hamiltonian& h1 = scaled.node(k + 1);
    for (int j = 0; j < steps; ++j) {
      const double s1 = (j + c1) * hs;
      const double s2 = (j + c2) * hs;
      const Hamiltonian first =
          (a2 * (1 - s1) + a1 * (1 - s2)) * h0 + (a2 * s1 + a1 * s2) * h1;
      const Hamiltonian second =
          (a1 * (1 - s1) + a2 * (1 - s2)) * h0 + (a1 * s1 + a2 * s2) * h1;
      krylov_expm(first, dt, psi.amplitudes(), options.krylov_tolerance);
      krylov_expm(second, dt, psi.amplitudes(), options.krylov_tolerance);
      ++result.step_count;
      const double nrm = psi.norm();
      result.max_norm_drift = std::max(result.max_norm_drift, std::abs(nrm - norm0));
      if (track_parity) {
        result.max_parity_deviation =
            std::max(result.max_parity_deviation, std::abs(parity_expectation(psi) - parity0));
      }
    }
  }
  result.norm_drift = std::abs(1.0 - psi.norm());
  result.fidelity = fidelity(psi, target);
  const auto& final_h = scaled.node(scaled.segment_count());
  result.residual_energy = final_h.expectation(psi) - final_h.expectation(target);
  result.final_state = std::move(psi);
  result.target = target;
  return result;
}

EvolutionResult evolve(const models::InterpolationPath& path, const StateVector& psi0, double tau,
                       const EvolveOptions& options) {
  check_state(path, psi0);
  const StateVector target =
      options.target ? *options.target : default_target(path, psi0, options.solver);
  double rate = options.initial_rate;
  EvolutionResult previous = evolve_fixed(path, psi0, tau, rate, target, options);
  for (int r = 1; r <= options.max_refinements; ++r) {
    rate *= 2.0;
    EvolutionResult current = evolve_fixed(path, psi0, tau, rate, target, options);
    current.refinements = r;
    if (std::abs(current.fidelity - previous.fidelity) < options.accuracy) return current;
    previous = std::move(current);
  }
  std::ostringstream msg;
  msg << "step refinement did not reach accuracy " << options.accuracy << " within "
      << options.max_refinements << " refinements";
  throw ConvergenceError(msg.str());
}

ScalingRow runtime_for_fidelity(models::Family family, const models::PathParams& params,
                                double target_fidelity, std::span<const double> tau_grid,
                                const RuntimeOptions& options) {
  if (tau_grid.empty()) throw InvalidArgument("empty runtime grid");
  for (std::size_t i = 1; i < tau_grid.size(); ++i) {
    if (!(tau_grid[i] > tau_grid[i - 1])) throw InvalidArgument("runtime grid must be increasing");
  }
  const auto path = models::make_path(family, params);
  const StateVector psi0 = default_initial_state(path);
  EvolveOptions eo = options.evolve;
  if (!eo.target) eo.target = default_target(path, psi0, eo.solver);

  ScalingRow row;
  row.family = family;
  row.n = path.qubits();
  row.target_fidelity = target_fidelity;
  for (std::size_t i = 0; i < tau_grid.size(); ++i) {
    const auto res = evolve(path, psi0, tau_grid[i], eo);
    row.fidelity_at_tau = res.fidelity;
    if (res.fidelity < target_fidelity) continue;
    row.reached = true;
    double hi = tau_grid[i];
    double f_hi = res.fidelity;
    if (i > 0) {
      double lo = tau_grid[i - 1];
      for (int b = 0; b < options.bisection_steps; ++b) {
        const double mid = 0.5 * (lo + hi);
        const auto rm = evolve(path, psi0, mid, eo);
        if (rm.fidelity >= target_fidelity) {
          hi = mid;
          f_hi = rm.fidelity;
        } else {
          lo = mid;
        }
      }
    }
    row.tau_required = hi;
    row.fidelity_at_tau = f_hi;
    return row;
  }
  return row;
}

}  // namespace adiastep::dynamics
