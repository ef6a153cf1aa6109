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

#include <Eigen/Eigenvalues>

#include <cmath>

#include "adiastep/dynamics.hpp"
#include "adiastep/error.hpp"
#include "oracles.hpp"

namespace adiastep::dynamics {
namespace {

using models::Family;

StateVector cat_state(int n) {
  StateVector cat(n);
  cat[0] = 1.0 / std::sqrt(2.0);
  cat[cat.dimension() - 1] = 1.0 / std::sqrt(2.0);
  return cat;
}

models::InterpolationPath path_for(Family f, int n) {
  models::PathParams p;
  p.n = n;
  return models::make_path(f, p);
}

double distance(const StateVector& a, const StateVector& b) { return (a - b).norm(); }

TEST(Fidelity, Examples) {
  const auto s = StateVector::uniform(5);
  EXPECT_NEAR(fidelity(s, s), 1.0, 1e-14);
  EXPECT_NEAR(fidelity(StateVector::basis(3, 1), StateVector::basis(3, 6)), 0.0, 1e-15);
  EXPECT_NEAR(fidelity(StateVector::uniform(6), cat_state(6)), 0.03125, 1e-14);
  EXPECT_THROW(fidelity(StateVector::uniform(2), StateVector::uniform(3)), InvalidArgument);
}

TEST(KrylovExpm, MatchesDenseExponential) {
  const int n = 5;
  const auto op = oracle::random_operator(n, 12, 7, true);
  const Eigen::MatrixXcd h = oracle::dense(op);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const auto psi0 = StateVector::random(n, 3);
  for (double dt : {0.01, 0.7, 3.0}) {
    const Eigen::VectorXcd phases =
        (es.eigenvalues().cast<Complex>() * Complex(0.0, -dt)).array().exp();
    const Eigen::MatrixXcd u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    const Eigen::VectorXcd ref =
        u * Eigen::Map<const Eigen::VectorXcd>(psi0.amplitudes().data(), psi0.dimension());
    StateVector psi = psi0;
    krylov_expm(Hamiltonian(op), dt, psi.amplitudes());
    double err = 0.0;
    for (std::size_t i = 0; i < psi.dimension(); ++i) err = std::max(err, std::abs(psi[i] - ref(i)));
    EXPECT_LT(err, 1e-10) << "dt=" << dt;
  }
  StateVector wrong(4);
  EXPECT_THROW(krylov_expm(Hamiltonian(op), 0.1, wrong.amplitudes()), InvalidArgument);
}

TEST(KrylovExpm, ProjectorHamiltonian) {
  const auto s = std::make_shared<const StateVector>(StateVector::uniform(3));
  const auto h = Hamiltonian::projector_complement(s);
  StateVector psi = StateVector::basis(3, 0);
  krylov_expm(h, 1.3, psi.amplitudes());
  // exp(-i t (1 - P)) = e^{-i t} (1 - P) + P
  const Complex c = inner(*s, StateVector::basis(3, 0));
  StateVector ref = std::exp(Complex(0, -1.3)) * (StateVector::basis(3, 0) - c * *s) + c * *s;
  EXPECT_LT(distance(psi, ref), 1e-12);
}

TEST(Evolve, StationaryState) {
  const auto hi = models::ising_endpoints(4).first;
  const models::InterpolationPath path(Family::IsingLinear, {Hamiltonian(hi), Hamiltonian(hi)},
                                       {1.0});
  EvolveOptions opts;
  opts.target = StateVector::uniform(4);
  for (double tau : {0.5, 7.0}) {
    const auto r = evolve(path, StateVector::uniform(4), tau, opts);
    EXPECT_NEAR(r.fidelity, 1.0, 1e-12);
    EXPECT_NEAR(r.residual_energy, 0.0, 1e-10);
  }
}

TEST(Evolve, SuddenLimit) {
  const int n = 8;
  const auto path = path_for(Family::IsingLinear, n);
  EvolveOptions opts;
  opts.target = cat_state(n);
  const auto r = evolve(path, StateVector::uniform(n), 1e-6, opts);
  EXPECT_NEAR(r.fidelity, std::pow(2.0, -(n - 1)), 1e-8);
}

TEST(Evolve, DefaultTargetIsEvenCat) {
  const auto path = path_for(Family::IsingStepwise, 6);
  const auto t = default_target(path, StateVector::uniform(6));
  EXPECT_NEAR(fidelity(t, cat_state(6)), 1.0, 1e-10);
}

TEST(Evolve, StepwiseReachesCatState) {
  const int n = 8;
  const auto path = path_for(Family::IsingStepwise, n);
  const auto r = evolve(path, StateVector::uniform(n), 200.0);
  EXPECT_GE(fidelity(r.final_state, cat_state(n)), 0.99);
  EXPECT_LT(r.norm_drift, 1e-9);
  EXPECT_LT(r.max_norm_drift, 1e-9);
  EXPECT_LT(r.max_parity_deviation, 1e-9);
  EXPECT_GE(r.residual_energy, -1e-10);
}

TEST(Evolve, FourthOrderConvergence) {
  const int n = 4;
  const auto path = path_for(Family::IsingLinear, n);
  const auto psi0 = StateVector::uniform(n);
  EvolveOptions opts;
  opts.krylov_tolerance = 1e-15;
  opts.min_steps_per_segment = 1;
  const auto target = default_target(path, psi0);
  const auto ref = evolve_fixed(path, psi0, 6.0, 512.0, target, opts).final_state;
  std::vector<double> errors;
  for (double rate : {1.0, 2.0, 4.0}) {
    errors.push_back(distance(evolve_fixed(path, psi0, 6.0, rate, target, opts).final_state, ref));
  }
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    const double order = std::log2(errors[i] / errors[i + 1]);
    EXPECT_GT(order, 3.5) << i;
    EXPECT_LT(order, 4.6) << i;
  }
}

TEST(Evolve, ResidualEnergyShrinksWithRuntime) {
  const auto path = path_for(Family::IsingLinear, 6);
  const auto psi0 = StateVector::uniform(6);
  double previous = 1e9;
  for (double tau : {1.0, 10.0, 100.0}) {
    const auto r = evolve(path, psi0, tau);
    EXPECT_GE(r.residual_energy, -1e-10);
    EXPECT_LT(r.residual_energy, previous);
    previous = r.residual_energy;
  }
}

TEST(Evolve, ClusterChainWithoutParity) {
  const int n = 6;
  const auto path = path_for(Family::Cluster1dStepwise, n);
  const auto r = evolve(path, StateVector::uniform(n), 150.0);
  EXPECT_GE(r.fidelity, 0.99);
  EXPECT_EQ(r.max_parity_deviation, 0.0);
  const auto lattice = models::LatticeGraph::chain(n);
  EXPECT_GE(fidelity(r.final_state, models::cluster_state(lattice)), 0.99);
}

TEST(Evolve, RefinementBudget) {
  const auto path = path_for(Family::IsingLinear, 6);
  EvolveOptions opts;
  opts.accuracy = 1e-14;
  opts.max_refinements = 1;
  EXPECT_THROW(evolve(path, StateVector::uniform(6), 30.0, opts), ConvergenceError);
  EXPECT_THROW(evolve(path, StateVector::uniform(5), 1.0), InvalidArgument);
  EXPECT_THROW(evolve(path, StateVector::uniform(6), 0.0), InvalidArgument);
}

TEST(Runtime, ZeroTargetReturnsFirstGridPoint) {
  models::PathParams p;
  p.n = 4;
  const std::vector<double> grid{2.0, 4.0, 8.0};
  for (auto f : {Family::IsingLinear, Family::IsingStepwise, Family::Cluster1dStepwise}) {
    const auto row = runtime_for_fidelity(f, p, 0.0, grid);
    ASSERT_TRUE(row.reached);
    EXPECT_EQ(*row.tau_required, 2.0);
  }
}

TEST(Runtime, NotReachedAndBisection) {
  models::PathParams p;
  p.n = 4;
  const std::vector<double> short_grid{0.5, 1.0};
  const auto miss = runtime_for_fidelity(Family::IsingLinear, p, 0.999, short_grid);
  EXPECT_FALSE(miss.reached);
  EXPECT_FALSE(miss.tau_required.has_value());

  const std::vector<double> grid{1.0, 5.0, 25.0, 125.0};
  RuntimeOptions opts;
  opts.bisection_steps = 4;
  const auto row = runtime_for_fidelity(Family::IsingLinear, p, 0.99, grid, opts);
  ASSERT_TRUE(row.reached);
  EXPECT_GE(row.fidelity_at_tau, 0.99);
  const std::vector<double> bad{2.0, 1.0};
  EXPECT_THROW(runtime_for_fidelity(Family::IsingLinear, p, 0.9, bad), InvalidArgument);
}

}  // namespace
}  // namespace adiastep::dynamics
