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

#include "adiastep/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <sstream>

#include "adiastep/error.hpp"

namespace adiastep {

namespace {

void check_qubit_count(int n) {
  if (n < 0 || n > kMaxQubits) {
    throw InvalidArgument("qubit count " + std::to_string(n) + " outside [0, " +
                          std::to_string(kMaxQubits) + "]");
  }
}

void check_qubit(int n, int q) {
  if (q < 1 || q > n) {
    throw InvalidArgument("qubit index " + std::to_string(q) + " outside [1, " +
                          std::to_string(n) + "]");
  }
}

std::uint64_t full_mask(int n) { return n == 0 ? 0 : (~std::uint64_t{0}) >> (64 - n); }

Complex i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// i^phase X^x Z^z, used while composing conjugation images.
struct PhasedPauli {
  int phase = 0;
  std::uint64_t x = 0;
  std::uint64_t z = 0;
};

PhasedPauli multiply(const PhasedPauli& a, const PhasedPauli& b) {
  // Z^{z_a} X^{x_b} = (-1)^{|z_a & x_b|} X^{x_b} Z^{z_a}
  const int swaps = std::popcount(a.z & b.x);
  return {(a.phase + b.phase + 2 * swaps) % 4, a.x ^ b.x, a.z ^ b.z};
}

// Images of the single-qubit generators under the gate.
PhasedPauli image_of_x(int n, int q, const GateSpec& g) {
  const auto mq = qubit_mask(n, q);
  if (g.kind == GateKind::CNOT) {
    if (q == g.control) return {0, mq | qubit_mask(n, g.target), 0};
    return {0, mq, 0};
  }
  if (q == g.control) return {0, mq, qubit_mask(n, g.target)};
  if (q == g.target) return {0, mq, qubit_mask(n, g.control)};
  return {0, mq, 0};
}

PhasedPauli image_of_z(int n, int q, const GateSpec& g) {
  const auto mq = qubit_mask(n, q);
  if (g.kind == GateKind::CNOT && q == g.target) return {0, 0, mq | qubit_mask(n, g.control)};
  return {0, 0, mq};
}

void validate_gate(int n, const GateSpec& g) {
  check_qubit(n, g.control);
  check_qubit(n, g.target);
  if (g.control == g.target) throw InvalidArgument("gate control and target coincide");
}

}  // namespace

// ---------------------------------------------------------------- StateVector

StateVector::StateVector(int n) : n_(n) {
  check_qubit_count(n);
  amps_.assign(std::size_t{1} << n, Complex{});
}

StateVector::StateVector(int n, std::vector<Complex> amplitudes)
    : n_(n), amps_(std::move(amplitudes)) {
  check_qubit_count(n);
  if (amps_.size() != (std::size_t{1} << n)) {
    throw InvalidArgument("amplitude count does not match 2^n");
  }
}

StateVector StateVector::basis(int n, std::uint64_t index) {
  StateVector psi(n);
  if (index >= psi.dimension()) throw InvalidArgument("basis index out of range");
  psi.amps_[index] = 1.0;
  return psi;
}

StateVector StateVector::uniform(int n) {
  StateVector psi(n);
  const double a = 1.0 / std::sqrt(static_cast<double>(psi.dimension()));
  std::fill(psi.amps_.begin(), psi.amps_.end(), Complex{a, 0.0});
  return psi;
}

StateVector StateVector::random(int n, std::uint64_t seed) {
  StateVector psi(n);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (auto& a : psi.amps_) a = {normal(rng), normal(rng)};
  psi.normalize();
  return psi;
}

double StateVector::norm() const {
  double acc = 0.0;
  for (const auto& a : amps_) acc += std::norm(a);
  return std::sqrt(acc);
}

void StateVector::normalize() {
  const double nrm = norm();
  if (nrm == 0.0) throw InvalidArgument("cannot normalize the zero vector");
  for (auto& a : amps_) a /= nrm;
}

StateVector& StateVector::operator+=(const StateVector& other) {
  if (other.n_ != n_) throw InvalidArgument("qubit count mismatch");
  for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] += other.amps_[i];
  return *this;
}

StateVector& StateVector::operator-=(const StateVector& other) {
  if (other.n_ != n_) throw InvalidArgument("qubit count mismatch");
  for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] -= other.amps_[i];
  return *this;
}

StateVector& StateVector::operator*=(Complex factor) {
  for (auto& a : amps_) a *= factor;
  return *this;
}

StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
StateVector operator*(Complex factor, StateVector a) { return a *= factor; }

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw InvalidArgument("dimension mismatch in inner product");
  Complex acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

Complex inner(const StateVector& a, const StateVector& b) {
  if (a.qubits() != b.qubits()) throw InvalidArgument("qubit count mismatch");
  return inner(a.amplitudes(), b.amplitudes());
}

// ---------------------------------------------------------------- PauliString

char pauli_symbol(Pauli p) {
  static constexpr char kSymbols[] = {'I', 'X', 'Y', 'Z'};
  return kSymbols[static_cast<int>(p)];
}

PauliString::PauliString(int n, double coefficient)
    : n_(n), x_(0), z_(0), coefficient_(coefficient) {
  check_qubit_count(n);
}

PauliString::PauliString(int n, std::uint64_t x_mask, std::uint64_t z_mask, double coefficient)
    : n_(n), x_(x_mask), z_(z_mask), coefficient_(coefficient) {
  check_qubit_count(n);
  if (((x_mask | z_mask) & ~full_mask(n)) != 0) {
    throw InvalidArgument("Pauli mask exceeds qubit count");
  }
}

PauliString PauliString::parse(std::string_view factors, double coefficient) {
  const int n = static_cast<int>(factors.size());
  check_qubit_count(n);
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  for (int q = 1; q <= n; ++q) {
    const auto m = qubit_mask(n, q);
    switch (factors[q - 1]) {
      case 'I': case '_': break;
      case 'X': x |= m; break;
      case 'Y': x |= m; z |= m; break;
      case 'Z': z |= m; break;
      default:
        throw InvalidArgument("invalid Pauli symbol '" + std::string(1, factors[q - 1]) + "'");
    }
  }
  return {n, x, z, coefficient};
}

PauliString PauliString::from_factors(int n, std::initializer_list<std::pair<int, Pauli>> factors,
                                      double coefficient) {
  check_qubit_count(n);
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  for (const auto& [q, p] : factors) {
    check_qubit(n, q);
    const auto m = qubit_mask(n, q);
    if ((x | z) & m) throw InvalidArgument("qubit listed twice in Pauli factors");
    if (p == Pauli::X || p == Pauli::Y) x |= m;
    if (p == Pauli::Z || p == Pauli::Y) z |= m;
  }
  return {n, x, z, coefficient};
}

Pauli PauliString::factor(int q) const {
  check_qubit(n_, q);
  const auto m = qubit_mask(n_, q);
  const bool has_x = x_ & m;
  const bool has_z = z_ & m;
  if (has_x && has_z) return Pauli::Y;
  if (has_x) return Pauli::X;
  if (has_z) return Pauli::Z;
  return Pauli::I;
}

int PauliString::y_count() const { return std::popcount(x_ & z_); }
int PauliString::weight() const { return std::popcount(x_ | z_); }

std::vector<int> PauliString::support() const {
  std::vector<int> qs;
  for (int q = 1; q <= n_; ++q) {
    if ((x_ | z_) & qubit_mask(n_, q)) qs.push_back(q);
  }
  return qs;
}

bool PauliString::commutes_with(const PauliString& other) const {
  const int anti = std::popcount(x_ & other.z_) + std::popcount(z_ & other.x_);
  return anti % 2 == 0;
}

std::string PauliString::pattern() const {
  std::string s;
  s.reserve(n_);
  for (int q = 1; q <= n_; ++q) s.push_back(pauli_symbol(factor(q)));
  return s;
}

std::string PauliString::str() const {
  std::ostringstream os;
  os << coefficient_ << "*" << pattern();
  return os.str();
}

// ---------------------------------------------------------------- OperatorSum

OperatorSum::OperatorSum(int n) : n_(n) { check_qubit_count(n); }

OperatorSum::OperatorSum(int n, std::vector<PauliString> terms) : n_(n), terms_(std::move(terms)) {
  check_qubit_count(n);
  for (const auto& t : terms_) {
    if (t.qubits() != n) throw InvalidArgument("term qubit count differs from operator");
  }
  canonicalize();
}

OperatorSum OperatorSum::identity(int n, double coefficient) {
  return OperatorSum(n, {PauliString(n, coefficient)});
}

void OperatorSum::canonicalize() {
  std::sort(terms_.begin(), terms_.end(), [](const PauliString& a, const PauliString& b) {
    return std::pair{a.x_mask(), a.z_mask()} < std::pair{b.x_mask(), b.z_mask()};
  });
  std::vector<PauliString> merged;
  merged.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (!merged.empty() && merged.back().same_pattern(t)) {
      merged.back() = t.with_coefficient(merged.back().coefficient() + t.coefficient());
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged,
                [](const PauliString& t) { return std::abs(t.coefficient()) < kCoefficientCutoff; });
  terms_ = std::move(merged);
}

double OperatorSum::coefficient_of(const PauliString& pattern) const {
  for (const auto& t : terms_) {
    if (t.same_pattern(pattern)) return t.coefficient();
  }
  return 0.0;
}

bool OperatorSum::is_real() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const PauliString& t) { return t.y_count() % 2 == 0; });
}

bool OperatorSum::commutes_with_parity() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const PauliString& t) { return std::popcount(t.z_mask()) % 2 == 0; });
}

bool OperatorSum::approx_equal(const OperatorSum& other, double tol) const {
  if (n_ != other.n_) return false;
  const OperatorSum diff = *this - other;
  return std::all_of(diff.terms_.begin(), diff.terms_.end(),
                     [tol](const PauliString& t) { return std::abs(t.coefficient()) <= tol; });
}

std::string OperatorSum::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) os << " + ";
    os << terms_[i].str();
  }
  return os.str();
}

OperatorSum& OperatorSum::operator+=(const OperatorSum& other) {
  if (other.n_ != n_) throw InvalidArgument("qubit count mismatch in operator sum");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  canonicalize();
  return *this;
}

OperatorSum& OperatorSum::operator-=(const OperatorSum& other) { return *this += -1.0 * other; }

OperatorSum& OperatorSum::operator*=(double factor) {
  for (auto& t : terms_) t = t.with_coefficient(t.coefficient() * factor);
  canonicalize();
  return *this;
}

OperatorSum operator+(OperatorSum a, const OperatorSum& b) { return a += b; }
OperatorSum operator-(OperatorSum a, const OperatorSum& b) { return a -= b; }
OperatorSum operator*(double factor, OperatorSum a) { return a *= factor; }
OperatorSum operator*(OperatorSum a, double factor) { return a *= factor; }
OperatorSum operator-(OperatorSum a) { return a *= -1.0; }

OperatorSum interpolate(const OperatorSum& a, const OperatorSum& b, double s) {
  return (1.0 - s) * a + s * b;
}

// ------------------------------------------------------------------ actions

void apply_operator(const OperatorSum& op, std::span<const Complex> in, std::span<Complex> out,
                    bool accumulate) {
  const std::size_t dim = std::size_t{1} << op.qubits();
  if (in.size() != dim || out.size() != dim) {
    throw InvalidArgument("state dimension does not match operator");
  }
  if (!accumulate) std::fill(out.begin(), out.end(), Complex{});
  for (const auto& t : op.terms()) {
    const std::uint64_t x = t.x_mask();
    const std::uint64_t z = t.z_mask();
    const Complex f = t.coefficient() * i_power(t.y_count());
    if (f.imag() == 0.0) {
      const double fr = f.real();
      for (std::size_t idx = 0; idx < dim; ++idx) {
        const double sign = (std::popcount(idx & z) & 1) ? -fr : fr;
        out[idx ^ x] += sign * in[idx];
      }
    } else {
      for (std::size_t idx = 0; idx < dim; ++idx) {
        const Complex sign = (std::popcount(idx & z) & 1) ? -f : f;
        out[idx ^ x] += sign * in[idx];
      }
    }
  }
}

StateVector apply_operator(const OperatorSum& op, const StateVector& psi) {
  if (op.qubits() != psi.qubits()) throw InvalidArgument("qubit count mismatch");
  StateVector out(psi.qubits());
  apply_operator(op, psi.amplitudes(), out.amplitudes());
  return out;
}

Eigen::MatrixXcd to_dense(const OperatorSum& op, int cap) {
  if (op.qubits() > cap) {
    throw InvalidArgument("dense materialization of " + std::to_string(op.qubits()) +
                          " qubits exceeds cap " + std::to_string(cap));
  }
  const Eigen::Index dim = Eigen::Index{1} << op.qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : op.terms()) {
    const Complex f = t.coefficient() * i_power(t.y_count());
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
      const auto uidx = static_cast<std::uint64_t>(idx);
      const Complex v = (std::popcount(uidx & t.z_mask()) & 1) ? -f : f;
      m(static_cast<Eigen::Index>(uidx ^ t.x_mask()), idx) += v;
    }
  }
  return m;
}

Eigen::MatrixXd to_dense_real(const OperatorSum& op, int cap) {
  if (!op.is_real()) throw InvalidArgument("operator has complex matrix elements");
  if (op.qubits() > cap) {
    throw InvalidArgument("dense materialization of " + std::to_string(op.qubits()) +
                          " qubits exceeds cap " + std::to_string(cap));
  }
  const Eigen::Index dim = Eigen::Index{1} << op.qubits();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& t : op.terms()) {
    const double f = t.coefficient() * i_power(t.y_count()).real();
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
      const auto uidx = static_cast<std::uint64_t>(idx);
      const double v = (std::popcount(uidx & t.z_mask()) & 1) ? -f : f;
      m(static_cast<Eigen::Index>(uidx ^ t.x_mask()), idx) += v;
    }
  }
  return m;
}

// -------------------------------------------------------------- conjugation

PauliString conjugate(const PauliString& p, const GateSpec& gate) {
  const int n = p.qubits();
  validate_gate(n, gate);
  // p = c * i^y * X^x Z^z; map each generator and multiply in the same order.
  PhasedPauli acc;
  for (int q = 1; q <= n; ++q) {
    if (p.x_mask() & qubit_mask(n, q)) acc = multiply(acc, image_of_x(n, q, gate));
  }
  for (int q = 1; q <= n; ++q) {
    if (p.z_mask() & qubit_mask(n, q)) acc = multiply(acc, image_of_z(n, q, gate));
  }
  const int y_new = std::popcount(acc.x & acc.z);
  const int e = ((p.y_count() + acc.phase - y_new) % 4 + 4) % 4;
  // Hermitian gates map Hermitian strings to Hermitian strings: e is 0 or 2.
  const double sign = (e == 0) ? 1.0 : -1.0;
  return {n, acc.x, acc.z, p.coefficient() * sign};
}

OperatorSum conjugate(const OperatorSum& op, const GateSpec& gate) {
  validate_gate(op.qubits(), gate);
  std::vector<PauliString> mapped;
  mapped.reserve(op.size());
  for (const auto& t : op.terms()) mapped.push_back(conjugate(t, gate));
  return OperatorSum(op.qubits(), std::move(mapped));
}

OperatorSum conjugate(const OperatorSum& op, std::span<const GateSpec> gates) {
  OperatorSum out = op;
  for (const auto& g : gates) out = conjugate(out, g);
  return out;
}

StateVector apply_gate(const GateSpec& gate, const StateVector& psi) {
  const int n = psi.qubits();
  validate_gate(n, gate);
  StateVector out = psi;
  const auto mc = qubit_mask(n, gate.control);
  const auto mt = qubit_mask(n, gate.target);
  const std::size_t dim = psi.dimension();
  for (std::size_t idx = 0; idx < dim; ++idx) {
    if (gate.kind == GateKind::CNOT) {
      if (idx & mc) out[idx] = psi[idx ^ mt];
    } else if ((idx & mc) && (idx & mt)) {
      out[idx] = -psi[idx];
    }
  }
  return out;
}

StateVector parity_apply(const StateVector& psi) {
  const auto flip = full_mask(psi.qubits());
  StateVector out(psi.qubits());
  for (std::size_t idx = 0; idx < psi.dimension(); ++idx) out[idx ^ flip] = psi[idx];
  return out;
}

double parity_expectation(const StateVector& psi) {
  const auto flip = full_mask(psi.qubits());
  Complex acc{};
  for (std::size_t idx = 0; idx < psi.dimension(); ++idx) {
    acc += std::conj(psi[idx]) * psi[idx ^ flip];
  }
  return acc.real();
}

}  // namespace adiastep
