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

#include <Eigen/Eigenvalues>

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "adiastep/analytic.hpp"
#include "adiastep/dynamics.hpp"
#include "adiastep/ec3.hpp"
#include "adiastep/models.hpp"
#include "adiastep/pauli.hpp"
#include "adiastep/spectra.hpp"
#include "adiastep/verify.hpp"

namespace {

using namespace adiastep;
using models::Family;

// Tolerances pinned by the acceptance criteria.
constexpr double kLinearGapTol = 1e-6;
constexpr double kGapTol = 1e-6;
constexpr double kLocationTol = 1e-5;
constexpr double kLevelTol = 1e-8;
constexpr double kEc3GapTol = 1e-9;
constexpr double kFidelity = 0.99;
constexpr double kNormDriftTol = 1e-8;
constexpr double kParityTol = 1e-8;
constexpr double kSpectrumTol = 1e-10;
constexpr double kOverlapTol = 1e-8;
constexpr double kLastOverlapTol = 1e-10;

const double kSqrt2 = std::sqrt(2.0);

struct Report {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail << " [fail: " << what << "]";
    }
  }
};

models::InterpolationPath path_for(Family f, int n) {
  models::PathParams p;
  p.n = n;
  return models::make_path(f, p);
}

StateVector cat_state(int n) {
  StateVector cat(n);
  cat[0] = 1.0 / kSqrt2;
  cat[cat.dimension() - 1] = 1.0 / kSqrt2;
  return cat;
}

void linear_ising_gap(Report& r) {
  spectra::ScanOptions so;
  so.points = 41;
  for (int n : {6, 8, 10, 12}) {
    const auto curve = spectra::gap_scan(path_for(Family::IsingLinear, n), spectra::Sector::Even, so);
    const double expected = analytic::ising_linear_min_gap(n);
    const double dev = std::abs(curve.minimum.gap - expected);
    r.detail << " n=" << n << " gap=" << curve.minimum.gap << " expected=" << expected;
    r.require(dev <= kLinearGapTol, "n=" + std::to_string(n));
  }
}

void stepwise_ising_gap(Report& r) {
  spectra::ScanOptions so;
  so.points = 200;
  for (int n : {6, 8, 10}) {
    const auto curve = spectra::gap_scan(path_for(Family::IsingStepwise, n), spectra::Sector::Even, so);
    double lowest = curve.minimum.gap;
    for (const auto& s : curve.samples) lowest = std::min(lowest, s.gap);
    r.require(lowest >= kSqrt2 - kGapTol, "n=" + std::to_string(n) + " path minimum");
    const auto& first = curve.segment_minima.front();
    r.require(std::abs(first.gap - 4.0 / std::sqrt(5.0)) <= kGapTol &&
                  std::abs(first.local_s - 0.8) <= kLocationTol,
              "n=" + std::to_string(n) + " first segment");
    double worst_mid = 0.0;
    for (int k = 1; k <= n - 2; ++k) {
      const auto& m = curve.segment_minima[k];
      worst_mid = std::max(worst_mid, std::abs(m.gap - kSqrt2));
      r.require(std::abs(m.gap - kSqrt2) <= kGapTol && std::abs(m.local_s - 0.5) <= kLocationTol,
                "n=" + std::to_string(n) + " segment " + std::to_string(k));
    }
    r.detail << " n=" << n << " min=" << lowest << " first=" << first.gap << "@" << first.local_s
             << " mid_dev=" << worst_mid;
  }
}

void analytic_suite(Report& r) {
  verify::VerifyOptions vo;
  vo.s_points = 101;
  vo.max_kappa = 2;
  vo.tolerance = kLevelTol;
  for (int n : {6, 8, 10}) {
    std::vector<verify::CheckResult> checks{
        verify::check_ising_first_step(n, vo), verify::check_ising_mid_steps(n, vo),
        verify::check_cluster1d_steps(n, vo), verify::check_cluster2d_two_link(2, n / 2, vo)};
    for (const auto& c : checks) {
      r.detail << " " << c.name << "=" << c.max_deviation;
      r.require(c.passed, c.name);
    }
  }
}

void cluster2d_gaps(Report& r) {
  models::PathParams p;
  p.width = 3;
  p.height = 3;
  const auto path = models::make_path(Family::Cluster2dStepwise, p);
  const auto order = models::lattice_build_order(3, 3);
  spectra::ScanOptions so;
  so.points = 41;
  double worst_two = 0.0;
  double worst_one = 0.0;
  for (int k = 0; k < path.segment_count(); ++k) {
    const auto m = spectra::segment_min_gap(path, k, spectra::Sector::All, so);
    if (order.steps[k].links.size() == 2) {
      const double dev = std::abs(m.gap - (std::sqrt(5.0) - 1.0));
      worst_two = std::max(worst_two, dev);
      r.require(dev <= kGapTol && std::abs(m.local_s - 0.5) <= kLocationTol,
                "two-link step " + std::to_string(k));
    } else {
      const double dev = std::abs(m.gap - kSqrt2);
      worst_one = std::max(worst_one, dev);
      r.require(dev <= kGapTol, "one-link step " + std::to_string(k));
    }
  }
  r.detail << " steps=" << path.segment_count() << " two_link_dev=" << worst_two
           << " one_link_dev=" << worst_one;
}

void ec3_segments(Report& r) {
  spectra::ScanOptions so;
  so.points = 21;
  double worst = 0.0;
  int unique = 0;
  for (int i = 0; i < 25; ++i) {
    const int n = 5 + i % 6;
    const auto inst = ec3::random_instance(n, 4 * n, 1000 + i, true);
    const auto order = ec3::identity_order(inst);
    const auto chain = ec3::solution_counts(inst, order);
    r.require(chain.counts.back() >= 1, "instance " + std::to_string(i) + " unsatisfiable");
    const auto gaps = ec3::path_gaps(chain);
    models::PathParams p;
    p.instance = &inst;
    p.clause_order = order;
    const auto path = models::make_path(Family::Ec3Projector, p);
    for (int k = 0; k < path.segment_count(); ++k) {
      const auto m = spectra::segment_min_gap(path, k, spectra::Sector::All, so);
      const double dev = std::abs(m.gap - gaps.gaps[k]);
      worst = std::max(worst, dev);
      r.require(dev <= kEc3GapTol, "instance " + std::to_string(i) + " segment " + std::to_string(k));
    }
    if (chain.counts.back() == 1) {
      ++unique;
      r.require(gaps.min_gap > ec3::grover_gap(n), "instance " + std::to_string(i) + " Grover bound");
    }
  }
  r.detail << " instances=25 unique=" << unique << " max_gap_dev=" << worst;
}

void dynamics(Report& r) {
  const int n = 8;
  const auto path = path_for(Family::IsingStepwise, n);
  const auto res = dynamics::evolve(path, StateVector::uniform(n), 200.0);
  const double f = dynamics::fidelity(res.final_state, cat_state(n));
  r.detail << " F(n=8,tau=200)=" << f << " drift=" << res.max_norm_drift
           << " parity_dev=" << res.max_parity_deviation;
  r.require(f >= kFidelity, "fidelity");
  r.require(res.max_norm_drift < kNormDriftTol, "norm drift");
  r.require(res.max_parity_deviation <= kParityTol, "parity");

  std::vector<double> grid;
  for (double t = 1.0; t < 5000.0; t *= 1.25) grid.push_back(t);
  dynamics::RuntimeOptions ro;
  ro.bisection_steps = 8;
  std::vector<double> linear, stepwise;
  for (int m : {4, 6, 8}) {
    models::PathParams p;
    p.n = m;
    const auto lin = dynamics::runtime_for_fidelity(Family::IsingLinear, p, kFidelity, grid, ro);
    const auto stp = dynamics::runtime_for_fidelity(Family::IsingStepwise, p, kFidelity, grid, ro);
    r.require(lin.reached && stp.reached, "n=" + std::to_string(m) + " not reached");
    if (!lin.reached || !stp.reached) return;
    linear.push_back(*lin.tau_required);
    stepwise.push_back(*stp.tau_required);
    r.detail << " n=" << m << " tau_linear=" << linear.back() << " tau_stepwise=" << stepwise.back();
    r.require(stepwise.back() < linear.back(), "n=" + std::to_string(m) + " stepwise not faster");
  }
  const double lin_ratio = linear.back() / linear.front();
  const double stp_ratio = stepwise.back() / stepwise.front();
  r.detail << " ratio_linear=" << lin_ratio << " ratio_stepwise=" << stp_ratio;
  r.require(lin_ratio > stp_ratio, "ratio trend");
}

std::vector<double> dense_eigenvalues(const OperatorSum& op) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_dense(op), Eigen::EigenvaluesOnly);
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

void conjugation_rules(Report& r) {
  using P = Pauli;
  struct Rule {
    GateKind kind;
    P before_a, before_b, after_a, after_b;
  };
  const std::vector<Rule> rules{
      {GateKind::CNOT, P::Z, P::I, P::Z, P::I}, {GateKind::CNOT, P::Z, P::Z, P::I, P::Z},
      {GateKind::CNOT, P::I, P::X, P::I, P::X}, {GateKind::CNOT, P::I, P::Z, P::Z, P::Z},
      {GateKind::CNOT, P::X, P::I, P::X, P::X}, {GateKind::CZ, P::Z, P::X, P::I, P::X},
      {GateKind::CZ, P::Z, P::I, P::Z, P::I},   {GateKind::CZ, P::I, P::Z, P::I, P::Z},
      {GateKind::CZ, P::X, P::Z, P::X, P::I},
  };
  int identities = 0;
  for (int n = 2; n <= 8; ++n) {
    for (int a = 1; a <= n; ++a) {
      for (int b = 1; b <= n; ++b) {
        if (a == b) continue;
        for (const auto& rule : rules) {
          const GateSpec g{rule.kind, a, b};
          auto make = [&](P pa, P pb) {
            return PauliString::from_factors(n, {{a, pa}, {b, pb}}, -0.75);
          };
          const bool ok = conjugate(make(rule.before_a, rule.before_b), g) ==
                          make(rule.after_a, rule.after_b);
          ++identities;
          r.require(ok, "rule on n=" + std::to_string(n));
        }
      }
    }
  }
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    std::vector<PauliString> terms;
    std::normal_distribution<double> coef;
    for (int t = 0; t < 3 * n; ++t) {
      const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
      terms.emplace_back(n, rng() & mask, rng() & mask, coef(rng));
    }
    const OperatorSum op(n, terms);
    std::vector<GateSpec> gates;
    for (int k = 0; k < 4; ++k) {
      const int a = 1 + static_cast<int>(rng() % n);
      int b = 1 + static_cast<int>(rng() % n);
      if (b == a) b = a % n + 1;
      gates.push_back(rng() % 2 ? GateSpec::cnot(a, b) : GateSpec::cz(a, b));
    }
    const auto before = dense_eigenvalues(op);
    const auto after = dense_eigenvalues(conjugate(op, gates));
    for (std::size_t i = 0; i < before.size(); ++i) worst = std::max(worst, std::abs(before[i] - after[i]));
  }
  r.require(worst <= kSpectrumTol, "spectrum preservation");
  r.detail << " identities=" << identities << " rules=" << rules.size()
           << " max_spectrum_dev=" << worst;
}

void overlap_chain(Report& r) {
  spectra::SolverOptions opts;
  opts.sector = spectra::Sector::Even;
  for (int n : {6, 8, 10}) {
    std::vector<StateVector> ground;
    for (int k = 0; k <= n; ++k) {
      auto res = spectra::lowest_eigenpairs(Hamiltonian(models::ising_step_hamiltonian(n, k)), 1, true, opts);
      ground.push_back(std::move(res.eigenvectors.front()));
    }
    double worst = 0.0;
    for (int k = 0; k <= n - 2; ++k) {
      worst = std::max(worst, std::abs(std::abs(inner(ground[k], ground[k + 1])) - 1.0 / kSqrt2));
    }
    const double last = std::abs(std::abs(inner(ground[n - 1], ground[n])) - 1.0);
    r.require(worst <= kOverlapTol, "n=" + std::to_string(n) + " chain");
    r.require(last <= kLastOverlapTol, "n=" + std::to_string(n) + " last step");
    r.detail << " n=" << n << " chain_dev=" << worst << " last_dev=" << last;
  }
}

struct Criterion {
  const char* title;
  std::function<void(Report&)> body;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"linear Ising even gap equals 2 sin(pi/2n)", linear_ising_gap},
      {"stepwise Ising even gap bounds and minima", stepwise_ising_gap},
      {"closed-form levels match numerics", analytic_suite},
      {"2D cluster 3x3 step gaps", cluster2d_gaps},
      {"EC3 projector segment gaps", ec3_segments},
      {"adiabatic dynamics fidelity and runtime trend", dynamics},
      {"CNOT/CZ conjugation identities", conjugation_rules},
      {"stepwise Ising ground-state overlap chain", overlap_chain},
  };
  return all;
}

bool run_criterion(int index) {
  const auto& c = criteria().at(index - 1);
  Report report;
  report.detail.precision(12);
  const auto start = std::chrono::steady_clock::now();
  try {
    c.body(report);
  } catch (const std::exception& e) {
    report.passed = false;
    report.detail << " [error: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (report.passed ? "PASS" : "FAIL") << " criterion " << index << ": " << c.title << " ("
            << secs << " s)" << report.detail.str() << std::endl;
  return report.passed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adiastep acceptance suite"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion (1-8)")
      ->check(CLI::Range(1, static_cast<int>(criteria().size())));
  CLI11_PARSE(app, argc, argv);
  bool all = true;
  for (int i = 1; i <= static_cast<int>(criteria().size()); ++i) {
    if (only != 0 && i != only) continue;
    all = run_criterion(i) && all;
  }
  return all ? 0 : 1;
}
