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
#include <span>
#include <vector>

#include "adiastep/hamiltonian.hpp"
#include "adiastep/models.hpp"
#include "adiastep/spectra.hpp"

namespace adiastep::dynamics {

/// psi <- exp(-i dt H) psi by an adaptive Lanczos (Krylov) projection.
void krylov_expm(const Hamiltonian& h, double dt, std::span<Complex> psi, double tolerance = 1e-12,
                 int max_dim = 40);

struct EvolveOptions {
  /// Refinement stops when the fidelity changes by less than this.
  double accuracy = 1e-6;
  /// Initial steps per unit time, doubled on every refinement.
  double initial_rate = 1.0;
  int min_steps_per_segment = 4;
  int max_refinements = 16;
  double krylov_tolerance = 1e-12;
  /// Fidelity reference; defaults to the final ground state in psi0's sector.
  std::optional<StateVector> target;
  spectra::SolverOptions solver;
};

struct EvolutionResult {
  StateVector final_state;
  StateVector target;
  double fidelity = 0.0;
  /// |1 - ||psi(tau)|||
  double norm_drift = 0.0;
  /// Largest |1 - ||psi(t)||| over all steps.
  double max_norm_drift = 0.0;
  /// Largest |<P>(t) - <P>(0)| over all steps; 0 for paths without bit-flip symmetry.
  double max_parity_deviation = 0.0;
  /// <psi(tau)|H(tau)|psi(tau)> minus the final ground energy.
  double residual_energy = 0.0;
  std::size_t step_count = 0;
  int refinements = 0;
  double tau = 0.0;
};

/// |<target|psi>|^2
double fidelity(const StateVector& psi, const StateVector& target);

/// Ground state of H_0 for every family: the uniform superposition.
StateVector default_initial_state(const models::InterpolationPath& path);

/// Lowest state of the final Hamiltonian in the parity sector of `psi0` (all
/// sectors when the path has no bit-flip symmetry or psi0 has mixed parity).
StateVector default_target(const models::InterpolationPath& path, const StateVector& psi0,
                           const spectra::SolverOptions& solver = {});

/// Propagates psi0 along the path rescaled to total time tau with a fourth-order
/// commutator-free Magnus integrator, tightening the step until the fidelity
/// is stable to `options.accuracy`.
EvolutionResult evolve(const models::InterpolationPath& path, const StateVector& psi0, double tau,
                       const EvolveOptions& options = {});

/// Single pass at a fixed step rate (steps per unit time), no refinement.
EvolutionResult evolve_fixed(const models::InterpolationPath& path, const StateVector& psi0,
                             double tau, double rate, const StateVector& target,
                             const EvolveOptions& options = {});

struct ScalingRow {
  models::Family family;
  int n = 0;
  double target_fidelity = 0.0;
  bool reached = false;
  /// Smallest tau found with fidelity >= target (unset if not reached).
  std::optional<double> tau_required;
  double fidelity_at_tau = 0.0;
};

struct RuntimeOptions {
  /// Bisection steps between the last failing and first passing grid point.
  int bisection_steps = 0;
  EvolveOptions evolve;
};

/// Scans the increasing tau grid for the first tau reaching the target
/// fidelity, optionally refining by bisection.
ScalingRow runtime_for_fidelity(models::Family family, const models::PathParams& params,
                                double target_fidelity, std::span<const double> tau_grid,
                                const RuntimeOptions& options = {});

}  // namespace adiastep::dynamics
