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

#include "adiastep/lanczos.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "adiastep/error.hpp"

namespace adiastep {

namespace {

using Vec = std::vector<Complex>;

double norm_of(const Vec& v) {
  double acc = 0.0;
  for (const auto& a : v) acc += std::norm(a);
  return std::sqrt(acc);
}

void scale(Vec& v, double f) {
  for (auto& a : v) a *= f;
}

// v -= <u, v> u for each u (u normalized)
void orthogonalize(Vec& v, const std::vector<Vec>& basis) {
  for (const auto& u : basis) {
    const Complex c = inner(std::span<const Complex>(u), std::span<const Complex>(v));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * u[i];
  }
}

Vec random_vector(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vec v(dim);
  for (auto& a : v) a = {normal(rng), normal(rng)};
  return v;
}

}  // namespace

void project_parity(std::span<Complex> v, int sign) {
  const std::size_t dim = v.size();
  const std::size_t flip = dim - 1;
  for (std::size_t i = 0; i < dim; ++i) {
    const std::size_t j = i ^ flip;
    if (j < i) continue;
    const Complex a = v[i];
    const Complex b = v[j];
    if (sign > 0) {
      v[i] = v[j] = 0.5 * (a + b);
    } else {
      v[i] = 0.5 * (a - b);
      v[j] = -v[i];
    }
  }
}

EigenPairs lanczos_lowest(const Hamiltonian& h, int count, const LanczosOptions& options,
                          const SubspaceProjector& projector) {
  const std::size_t dim = h.dimension();
  if (count < 0) throw InvalidArgument("negative eigenpair count");
  if (static_cast<std::size_t>(count) > dim) {
    throw InvalidArgument("requested more eigenpairs than the Hilbert space dimension");
  }
  const int m = std::max(2, std::min<int>(options.krylov_dim, static_cast<int>(dim)));

  std::vector<Vec> locked;
  std::vector<double> values;
  Vec w(dim);
  Vec scratch(dim);

  auto project = [&](Vec& v) {
    if (projector) projector(std::span<Complex>(v));
    orthogonalize(v, locked);
  };

  for (int level = 0; level < count; ++level) {
    Vec v = random_vector(dim, options.seed + 0x9e3779b97f4a7c15ULL * (level + 1));
    project(v);
    orthogonalize(v, locked);
    double nv = norm_of(v);
    if (nv < 1e-8) {
      throw InvalidArgument("requested more eigenpairs than the target subspace holds");
    }
    scale(v, 1.0 / nv);

    bool converged = false;
    for (int restart = 0; restart <= options.max_restarts && !converged; ++restart) {
      std::vector<Vec> basis{v};
      std::vector<double> alpha;
      std::vector<double> beta;
      bool breakdown = false;
      for (int i = 0; i < m; ++i) {
        h.apply(std::span<const Complex>(basis[i]), std::span<Complex>(w));
        const double a =
            inner(std::span<const Complex>(basis[i]), std::span<const Complex>(w)).real();
        alpha.push_back(a);
        if (i + 1 == m) break;
        for (std::size_t j = 0; j < dim; ++j) {
          w[j] -= a * basis[i][j];
          if (i > 0) w[j] -= beta[i - 1] * basis[i - 1][j];
        }
        for (int pass = 0; pass < 2; ++pass) {
          if (projector) projector(std::span<Complex>(w));
          orthogonalize(w, locked);
          orthogonalize(w, basis);
        }
        const double b = norm_of(w);
        const double scale_ref = 1.0 + std::abs(a) + (i > 0 ? beta[i - 1] : 0.0);
        if (b <= 1e-12 * scale_ref) {
          breakdown = true;
          break;
        }
        beta.push_back(b);
        Vec next = w;
        scale(next, 1.0 / b);
        basis.push_back(std::move(next));
      }

      const int k = static_cast<int>(alpha.size());
      Eigen::VectorXd diag(k);
      Eigen::VectorXd sub(std::max(0, k - 1));
      for (int i = 0; i < k; ++i) diag(i) = alpha[i];
      for (int i = 0; i + 1 < k; ++i) sub(i) = beta[i];
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
      tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
      const double theta = tri.eigenvalues()(0);
      const Eigen::VectorXd y = tri.eigenvectors().col(0);

      Vec x(dim, Complex{});
      for (int i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < dim; ++j) x[j] += y(i) * basis[i][j];
      }
      project(x);
      const double nx = norm_of(x);
      scale(x, 1.0 / nx);

      h.apply(std::span<const Complex>(x), std::span<Complex>(scratch));
      for (std::size_t j = 0; j < dim; ++j) scratch[j] -= theta * x[j];
      orthogonalize(scratch, locked);
      const double residual = norm_of(scratch);

      if (residual < options.tolerance) {
        locked.push_back(std::move(x));
        values.push_back(theta);
        converged = true;
      } else if (breakdown) {
        // Invariant subspace but an inaccurate Ritz vector: perturb and retry.
        Vec kick = random_vector(dim, options.seed ^ (0xabcdefULL + restart));
        project(kick);
        const double nk = norm_of(kick);
        for (std::size_t j = 0; j < dim; ++j) x[j] += 1e-3 * kick[j] / nk;
        project(x);
        scale(x, 1.0 / norm_of(x));
        v = std::move(x);
      } else {
        v = std::move(x);
      }
    }
    if (!converged) {
      throw ConvergenceError("Lanczos did not converge for level " + std::to_string(level) +
                             " within " + std::to_string(options.max_restarts) + " restarts");
    }
  }

  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return values[a] < values[b]; });
  EigenPairs out;
  const int n = h.qubits();
  for (auto i : idx) {
    out.values.push_back(values[i]);
    out.vectors.emplace_back(n, std::move(locked[i]));
  }
  return out;
}

}  // namespace adiastep
