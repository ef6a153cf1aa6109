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

#include "adiastep/hamiltonian.hpp"

#include <algorithm>
#include <cmath>

#include "adiastep/error.hpp"

namespace adiastep {

Hamiltonian::Hamiltonian(OperatorSum local, std::vector<ProjectorTerm> projectors)
    : local_(std::move(local)), projectors_(std::move(projectors)) {
  for (const auto& p : projectors_) {
    if (!p.state || p.state->qubits() != local_.qubits()) {
      throw InvalidArgument("projector state qubit count differs from Hamiltonian");
    }
  }
  merge_projectors();
}

Hamiltonian Hamiltonian::projector_complement(std::shared_ptr<const StateVector> psi) {
  if (!psi) throw InvalidArgument("null projector state");
  const int n = psi->qubits();
  return Hamiltonian(OperatorSum::identity(n), {ProjectorTerm{-1.0, std::move(psi)}});
}

void Hamiltonian::merge_projectors() {
  std::vector<ProjectorTerm> merged;
  for (const auto& p : projectors_) {
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const ProjectorTerm& q) { return q.state == p.state; });
    if (it != merged.end()) {
      it->weight += p.weight;
    } else {
      merged.push_back(p);
    }
  }
  std::erase_if(merged,
                [](const ProjectorTerm& p) { return std::abs(p.weight) < kCoefficientCutoff; });
  projectors_ = std::move(merged);
}

bool Hamiltonian::is_real() const {
  if (!local_.is_real()) return false;
  return std::all_of(projectors_.begin(), projectors_.end(), [](const ProjectorTerm& p) {
    const auto a = p.state->amplitudes();
    return std::all_of(a.begin(), a.end(), [](Complex c) { return c.imag() == 0.0; });
  });
}

bool Hamiltonian::commutes_with_parity() const {
  if (!local_.commutes_with_parity()) return false;
  for (const auto& p : projectors_) {
    // [|v><v|, P] = 0 iff P v = +-v
    const double pe = parity_expectation(*p.state) / std::pow(p.state->norm(), 2);
    if (std::abs(std::abs(pe) - 1.0) > 1e-12) return false;
  }
  return true;
}

void Hamiltonian::apply(std::span<const Complex> in, std::span<Complex> out) const {
  apply_operator(local_, in, out);
  for (const auto& p : projectors_) {
    const auto v = p.state->amplitudes();
    const Complex overlap = p.weight * inner(v, in);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += overlap * v[i];
  }
}

StateVector Hamiltonian::apply(const StateVector& psi) const {
  if (psi.qubits() != qubits()) throw InvalidArgument("qubit count mismatch");
  StateVector out(qubits());
  apply(psi.amplitudes(), out.amplitudes());
  return out;
}

double Hamiltonian::expectation(const StateVector& psi) const {
  return inner(psi, apply(psi)).real();
}

Eigen::MatrixXcd Hamiltonian::to_dense(int cap) const {
  Eigen::MatrixXcd m = adiastep::to_dense(local_, cap);
  for (const auto& p : projectors_) {
    const auto a = p.state->amplitudes();
    const Eigen::Map<const Eigen::VectorXcd> v(a.data(), static_cast<Eigen::Index>(a.size()));
    m += p.weight * v * v.adjoint();
  }
  return m;
}

Eigen::MatrixXd Hamiltonian::to_dense_real(int cap) const {
  if (!is_real()) throw InvalidArgument("Hamiltonian has complex matrix elements");
  Eigen::MatrixXd m = adiastep::to_dense_real(local_, cap);
  for (const auto& p : projectors_) {
    const auto a = p.state->amplitudes();
    Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) v(static_cast<Eigen::Index>(i)) = a[i].real();
    m += p.weight * v * v.transpose();
  }
  return m;
}

Hamiltonian& Hamiltonian::operator+=(const Hamiltonian& other) {
  if (other.qubits() != qubits()) throw InvalidArgument("qubit count mismatch");
  local_ += other.local_;
  projectors_.insert(projectors_.end(), other.projectors_.begin(), other.projectors_.end());
  merge_projectors();
  return *this;
}

Hamiltonian& Hamiltonian::operator*=(double factor) {
  local_ *= factor;
  for (auto& p : projectors_) p.weight *= factor;
  merge_projectors();
  return *this;
}

Hamiltonian operator+(Hamiltonian a, const Hamiltonian& b) { return a += b; }
Hamiltonian operator*(double factor, Hamiltonian a) { return a *= factor; }

Hamiltonian interpolate(const Hamiltonian& a, const Hamiltonian& b, double s) {
  return (1.0 - s) * a + s * b;
}

}  // namespace adiastep
