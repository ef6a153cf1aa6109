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

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace adiastep {

using Complex = std::complex<double>;

/// Largest qubit count representable by the bitmask encoding.
inline constexpr int kMaxQubits = 62;

/// Default cap for dense materialization (2^14 x 2^14).
inline constexpr int kDefaultDenseCap = 14;

/// Coefficients below this magnitude are dropped during canonicalization.
inline constexpr double kCoefficientCutoff = 1e-15;

/// Bit mask of qubit `q` (1-based) in a basis index of an `n`-qubit register.
/// Qubit 1 is the most significant bit.
constexpr std::uint64_t qubit_mask(int n, int q) {
  return std::uint64_t{1} << (n - q);
}

/// Dense amplitude vector over the computational basis of n qubits.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(int n);
  StateVector(int n, std::vector<Complex> amplitudes);

  static StateVector basis(int n, std::uint64_t index);
  /// Equal superposition of all basis states (the +1 eigenstate of every X).
  static StateVector uniform(int n);
  /// Normalized state with independent Gaussian amplitudes.
  static StateVector random(int n, std::uint64_t seed);

  int qubits() const { return n_; }
  std::size_t dimension() const { return amps_.size(); }

  std::span<const Complex> amplitudes() const { return amps_; }
  std::span<Complex> amplitudes() { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[i]; }
  Complex& operator[](std::size_t i) { return amps_[i]; }

  double norm() const;
  void normalize();

  StateVector& operator+=(const StateVector& other);
  StateVector& operator-=(const StateVector& other);
  StateVector& operator*=(Complex factor);

 private:
  int n_ = 0;
  std::vector<Complex> amps_;
};

StateVector operator+(StateVector a, const StateVector& b);
StateVector operator-(StateVector a, const StateVector& b);
StateVector operator*(Complex factor, StateVector a);

/// <a|b>
Complex inner(const StateVector& a, const StateVector& b);
Complex inner(std::span<const Complex> a, std::span<const Complex> b);

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_symbol(Pauli p);

/// Real-weighted tensor product of single-qubit Pauli factors.
///
/// Stored in symplectic form: the operator is
/// coefficient * i^{#Y} * X^{x_mask} Z^{z_mask}, with Z applied first. A Y
/// factor sets both bits of its qubit.
class PauliString {
 public:
  explicit PauliString(int n, double coefficient = 1.0);
  PauliString(int n, std::uint64_t x_mask, std::uint64_t z_mask, double coefficient);

  /// Parses a factor string such as "XZI" (qubit 1 first).
  static PauliString parse(std::string_view factors, double coefficient = 1.0);
  static PauliString from_factors(int n, std::initializer_list<std::pair<int, Pauli>> factors,
                                  double coefficient = 1.0);

  int qubits() const { return n_; }
  double coefficient() const { return coefficient_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }
  Pauli factor(int q) const;
  int y_count() const;
  /// Number of non-identity factors.
  int weight() const;
  /// Qubits (1-based) carrying a non-identity factor.
  std::vector<int> support() const;

  PauliString with_coefficient(double c) const { return {n_, x_, z_, c}; }
  bool same_pattern(const PauliString& other) const {
    return n_ == other.n_ && x_ == other.x_ && z_ == other.z_;
  }
  bool commutes_with(const PauliString& other) const;
  /// Factor string without the coefficient, e.g. "XZI".
  std::string pattern() const;
  std::string str() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  int n_;
  std::uint64_t x_;
  std::uint64_t z_;
  double coefficient_;
};

/// Canonical real-weighted sum of Pauli strings: terms sorted by pattern,
/// duplicates merged, negligible coefficients dropped.
class OperatorSum {
 public:
  explicit OperatorSum(int n);
  OperatorSum(int n, std::vector<PauliString> terms);

  static OperatorSum identity(int n, double coefficient = 1.0);

  int qubits() const { return n_; }
  std::span<const PauliString> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Coefficient of the term with the same pattern as `pattern`, 0 if absent.
  double coefficient_of(const PauliString& pattern) const;
  /// True when every term has an even number of Y factors (real matrix).
  bool is_real() const;
  /// True when every term commutes with the full bit-flip string X...X.
  bool commutes_with_parity() const;
  bool approx_equal(const OperatorSum& other, double tol) const;
  std::string str() const;

  OperatorSum& operator+=(const OperatorSum& other);
  OperatorSum& operator-=(const OperatorSum& other);
  OperatorSum& operator*=(double factor);

  friend bool operator==(const OperatorSum&, const OperatorSum&) = default;

 private:
  void canonicalize();

  int n_;
  std::vector<PauliString> terms_;
};

OperatorSum operator+(OperatorSum a, const OperatorSum& b);
OperatorSum operator-(OperatorSum a, const OperatorSum& b);
OperatorSum operator*(double factor, OperatorSum a);
OperatorSum operator*(OperatorSum a, double factor);
OperatorSum operator-(OperatorSum a);

/// Weighted combination (1-s) a + s b.
OperatorSum interpolate(const OperatorSum& a, const OperatorSum& b, double s);

/// out (+)= op * in. Buffers must have dimension 2^n and must not alias.
void apply_operator(const OperatorSum& op, std::span<const Complex> in, std::span<Complex> out,
                    bool accumulate = false);
StateVector apply_operator(const OperatorSum& op, const StateVector& psi);

Eigen::MatrixXcd to_dense(const OperatorSum& op, int cap = kDefaultDenseCap);
/// Real dense matrix; requires op.is_real().
Eigen::MatrixXd to_dense_real(const OperatorSum& op, int cap = kDefaultDenseCap);

enum class GateKind { CNOT, CZ };

/// Two-qubit Hermitian Clifford gate; qubits are 1-based.
struct GateSpec {
  GateKind kind;
  int control;
  int target;

  static GateSpec cnot(int control, int target) { return {GateKind::CNOT, control, target}; }
  static GateSpec cz(int a, int b) { return {GateKind::CZ, a, b}; }
};

/// S op S for the Hermitian gate S.
PauliString conjugate(const PauliString& p, const GateSpec& gate);
OperatorSum conjugate(const OperatorSum& op, const GateSpec& gate);
/// Conjugation by a product of commuting gates, applied in order.
OperatorSum conjugate(const OperatorSum& op, std::span<const GateSpec> gates);

StateVector apply_gate(const GateSpec& gate, const StateVector& psi);

/// Applies the full bit-flip string X...X (reverses every bit of each index).
StateVector parity_apply(const StateVector& psi);
/// <psi| X...X |psi>, real part.
double parity_expectation(const StateVector& psi);

}  // namespace adiastep
