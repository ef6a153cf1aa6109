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

// Independent reference constructions used only by the tests: Kronecker
// products of 2x2 Pauli matrices and explicit bitstring enumeration.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "adiastep/pauli.hpp"

namespace oracle {

using adiastep::Complex;

inline Eigen::Matrix2cd pauli_matrix(adiastep::Pauli p) {
  Eigen::Matrix2cd m;
  switch (p) {
    case adiastep::Pauli::I:
      m << 1, 0, 0, 1;
      break;
    case adiastep::Pauli::X:
      m << 0, 1, 1, 0;
      break;
    case adiastep::Pauli::Y:
      m << 0, Complex(0, -1), Complex(0, 1), 0;
      break;
    case adiastep::Pauli::Z:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Qubit 1 is the leftmost Kronecker factor.
inline Eigen::MatrixXcd dense(const adiastep::PauliString& p) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (int q = 1; q <= p.qubits(); ++q) m = kron(m, pauli_matrix(p.factor(q)));
  return p.coefficient() * m;
}

inline Eigen::MatrixXcd dense(const adiastep::OperatorSum& op) {
  const auto dim = Eigen::Index{1} << op.qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : op.terms()) m += dense(t);
  return m;
}

/// Bit b_q of the basis index z (qubit 1 most significant).
inline int bit(std::uint64_t z, int n, int q) { return static_cast<int>((z >> (n - q)) & 1U); }

inline Eigen::MatrixXcd gate_matrix(const adiastep::GateSpec& g, int n) {
  const auto dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index z = 0; z < dim; ++z) {
    const auto uz = static_cast<std::uint64_t>(z);
    if (g.kind == adiastep::GateKind::CNOT) {
      std::uint64_t out = uz;
      if (bit(uz, n, g.control)) out ^= std::uint64_t{1} << (n - g.target);
      m(static_cast<Eigen::Index>(out), z) = 1.0;
    } else {
      m(z, z) = (bit(uz, n, g.control) && bit(uz, n, g.target)) ? -1.0 : 1.0;
    }
  }
  return m;
}

inline std::vector<double> eigenvalues(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

/// Classical Ising energy -sum_i s_i s_{i+1}, s = 1 - 2b, with optional wrap bond.
inline int ising_energy(std::uint64_t z, int n, bool periodic) {
  int e = 0;
  const int bonds = periodic ? n : n - 1;
  for (int i = 1; i <= bonds; ++i) {
    const int j = i % n + 1;
    e -= (bit(z, n, i) == bit(z, n, j)) ? 1 : -1;
  }
  return e;
}

inline adiastep::OperatorSum random_operator(int n, int terms, std::uint64_t seed,
                                             bool allow_y = true) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::vector<adiastep::PauliString> out;
  for (int t = 0; t < terms; ++t) {
    std::uint64_t x = rng() & full;
    std::uint64_t z = rng() & full;
    if (!allow_y) z &= ~x;
    out.emplace_back(n, x, z, normal(rng));
  }
  return adiastep::OperatorSum(n, std::move(out));
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

inline std::vector<std::vector<int>> all_bitstrings(int n) {
  std::vector<std::vector<int>> out;
  for (std::uint64_t z = 0; z < (std::uint64_t{1} << n); ++z) {
    std::vector<int> b(n);
    for (int q = 1; q <= n; ++q) b[q - 1] = bit(z, n, q);
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace oracle
