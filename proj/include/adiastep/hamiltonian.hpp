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

#include <memory>
#include <span>
#include <vector>

#include "adiastep/pauli.hpp"

namespace adiastep {

/// weight * |state><state| with a shared, immutable normalized state.
struct ProjectorTerm {
  double weight;
  std::shared_ptr<const StateVector> state;
};

/// Hamiltonian usable along an interpolation path: a local Pauli part plus an
/// optional list of weighted rank-one projectors. The projector part carries
/// the non-local projector Hamiltonians 1 - |psi><psi|; all spin-model
/// Hamiltonians have an empty projector list.
class Hamiltonian {
 public:
  explicit Hamiltonian(int n) : local_(n) {}
  Hamiltonian(OperatorSum local) : local_(std::move(local)) {}  // NOLINT(implicit)
  Hamiltonian(OperatorSum local, std::vector<ProjectorTerm> projectors);

  /// 1 - |psi><psi|
  static Hamiltonian projector_complement(std::shared_ptr<const StateVector> psi);

  int qubits() const { return local_.qubits(); }
  std::size_t dimension() const { return std::size_t{1} << qubits(); }
  const OperatorSum& local() const { return local_; }
  std::span<const ProjectorTerm> projectors() const { return projectors_; }
  bool is_local() const { return projectors_.empty(); }

  bool is_real() const;
  /// Structural check for the Pauli part, exact check for projector states.
  bool commutes_with_parity() const;

  void apply(std::span<const Complex> in, std::span<Complex> out) const;
  StateVector apply(const StateVector& psi) const;
  double expectation(const StateVector& psi) const;

  Eigen::MatrixXcd to_dense(int cap = kDefaultDenseCap) const;
  Eigen::MatrixXd to_dense_real(int cap = kDefaultDenseCap) const;

  Hamiltonian& operator+=(const Hamiltonian& other);
  Hamiltonian& operator*=(double factor);

 private:
  void merge_projectors();

  OperatorSum local_;
  std::vector<ProjectorTerm> projectors_;
};

Hamiltonian operator+(Hamiltonian a, const Hamiltonian& b);
Hamiltonian operator*(double factor, Hamiltonian a);

/// (1-s) a + s b
Hamiltonian interpolate(const Hamiltonian& a, const Hamiltonian& b, double s);

}  // namespace adiastep
