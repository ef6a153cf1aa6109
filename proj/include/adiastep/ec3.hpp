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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adiastep/hamiltonian.hpp"
#include "adiastep/pauli.hpp"

namespace adiastep::ec3 {

/// Three distinct 1-based bit positions; satisfied when exactly one is set.
using Clause = std::array<int, 3>;

/// Largest bit count accepted by exhaustive enumeration.
inline constexpr int kBruteForceCap = 24;

struct Instance {
  int n = 0;
  std::vector<Clause> clauses;

  int clause_count() const { return static_cast<int>(clauses.size()); }
  friend bool operator==(const Instance&, const Instance&) = default;
};

void validate(const Instance& instance);

/// Instance file: "n m", then m lines of three 1-based positions. Lines whose
/// first non-blank character is '#' and blank lines are ignored.
Instance parse_instance(std::string_view text);
Instance load_instance(const std::string& path);
std::string format_instance(const Instance& instance);

/// (1 - b_p1 - b_p2 - b_p3)^2 for bits b_1..b_n given as bits[0..n-1].
int clause_energy(std::span<const std::uint8_t> bits, const Clause& clause);
/// Same, for bit b_q read from basis index `z` of an n-bit register.
int clause_energy(std::uint64_t z, int n, const Clause& clause);

/// 0, 1, ..., m-1
std::vector<int> identity_order(const Instance& instance);

/// N_0 = 2^n, N_1, ..., N_m for the clause order, and r_k = N_{k+1} / N_k.
struct SolutionCountChain {
  std::vector<std::uint64_t> counts;
  std::vector<double> reductions;
};

SolutionCountChain solution_counts(const Instance& instance, std::span<const int> order,
                                   int cap = kBruteForceCap);

/// Basis indices satisfying the first k clauses of the order, ascending.
std::vector<std::uint64_t> solutions(const Instance& instance, std::span<const int> order, int k,
                                     int cap = kBruteForceCap);

struct PathGaps {
  std::vector<double> gaps;  ///< sqrt(r_k) per segment
  double min_gap = 0.0;
  int argmin = 0;
};

/// Projector-path segment gaps sqrt(N_{k+1}/N_k). Throws if any N_k is 0.
PathGaps path_gaps(const SolutionCountChain& chain);

/// Minimum gap of the direct H_0 -> H_m projector interpolation with a unique
/// solution: 1 / sqrt(2^n).
double grover_gap(int n);

/// (1 - zhat_p1 - zhat_p2 - zhat_p3)^2 with zhat = (1 - Z)/2, as a Pauli sum.
OperatorSum clause_hamiltonian(int n, const Clause& clause);
/// Sum of the first k clause Hamiltonians of the order.
OperatorSum problem_hamiltonian(const Instance& instance, std::span<const int> order, int k);

/// Uniform superposition over the solutions of the first k clauses.
StateVector solution_superposition(const Instance& instance, std::span<const int> order, int k);

/// H_k = 1 - |Psi_k><Psi_k|
Hamiltonian projector_hamiltonian(const Instance& instance, std::span<const int> order, int k);

enum class OrderStrategy { Given, GreedyMaxReduction, Random };

OrderStrategy parse_order_strategy(std::string_view name);

/// Clause permutation. Greedy repeatedly takes the unused clause with the
/// largest N_{k+1}/N_k (lowest index on ties); Random is a seeded shuffle.
std::vector<int> order_clauses(const Instance& instance, OrderStrategy strategy,
                               std::uint64_t seed = 0);

/// Random satisfiable instance built around a planted bitstring. Clauses are
/// added until the solution is unique (when `stop_at_unique`) or `max_clauses`
/// is reached.
Instance random_instance(int n, int max_clauses, std::uint64_t seed, bool stop_at_unique = true);

}  // namespace adiastep::ec3
