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

#include "adiastep/ec3.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>

#include "adiastep/error.hpp"

namespace adiastep::ec3 {

void validate(const Instance& instance) {
  if (instance.n < 1 || instance.n > kMaxQubits) {
    throw InvalidArgument("EC3 bit count " + std::to_string(instance.n) + " out of range");
  }
  for (std::size_t i = 0; i < instance.clauses.size(); ++i) {
    const auto& c = instance.clauses[i];
    for (int p : c) {
      if (p < 1 || p > instance.n) {
        throw InvalidArgument("clause " + std::to_string(i + 1) + ": position " +
                              std::to_string(p) + " outside [1, " + std::to_string(instance.n) +
                              "]");
      }
    }
    if (c[0] == c[1] || c[0] == c[2] || c[1] == c[2]) {
      throw InvalidArgument("clause " + std::to_string(i + 1) + ": duplicate position");
    }
  }
}

namespace {

std::vector<long> parse_integers(const std::string& line, int line_no) {
  std::istringstream ls(line);
  std::vector<long> out;
  std::string tok;
  while (ls >> tok) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw InvalidArgument("instance line " + std::to_string(line_no) + ": not an integer: '" +
                            tok + "'");
    }
  }
  return out;
}

bool skip_line(const std::string& line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

void check_enumerable(int n, int cap) {
  if (n > cap) {
    throw InvalidArgument("EC3 enumeration over " + std::to_string(n) + " bits exceeds cap " +
                          std::to_string(cap));
  }
}

void check_order(const Instance& instance, std::span<const int> order) {
  std::vector<bool> seen(instance.clauses.size(), false);
  for (int c : order) {
    if (c < 0 || c >= instance.clause_count() || seen[c]) {
      throw InvalidArgument("clause order is not a permutation of the clauses");
    }
    seen[c] = true;
  }
}

bool satisfies(std::uint64_t z, int n, const Clause& c) { return clause_energy(z, n, c) == 0; }

}  // namespace

Instance parse_instance(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool have_header = false;
  long expected = 0;
  Instance inst;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    const auto values = parse_integers(line, line_no);
    if (!have_header) {
      if (values.size() != 2) {
        throw InvalidArgument("instance line " + std::to_string(line_no) + ": expected 'n m'");
      }
      if (values[0] < 1 || values[0] > kMaxQubits || values[1] < 0) {
        throw InvalidArgument("instance line " + std::to_string(line_no) + ": invalid n or m");
      }
      inst.n = static_cast<int>(values[0]);
      expected = values[1];
      have_header = true;
      continue;
    }
    if (values.size() != 3) {
      throw InvalidArgument("instance line " + std::to_string(line_no) +
                            ": expected three positions");
    }
    if (static_cast<long>(inst.clauses.size()) == expected) {
      throw InvalidArgument("instance line " + std::to_string(line_no) + ": more than " +
                            std::to_string(expected) + " clauses");
    }
    Clause c{};
    for (int i = 0; i < 3; ++i) {
      if (values[i] < 1 || values[i] > inst.n) {
        throw InvalidArgument("instance line " + std::to_string(line_no) + ": position " +
                              std::to_string(values[i]) + " outside [1, " +
                              std::to_string(inst.n) + "]");
      }
      c[i] = static_cast<int>(values[i]);
    }
    if (c[0] == c[1] || c[0] == c[2] || c[1] == c[2]) {
      throw InvalidArgument("instance line " + std::to_string(line_no) + ": duplicate position");
    }
    inst.clauses.push_back(c);
  }
  if (!have_header) throw InvalidArgument("instance: missing 'n m' header");
  if (static_cast<long>(inst.clauses.size()) != expected) {
    throw InvalidArgument("instance: header announces " + std::to_string(expected) +
                          " clauses, found " + std::to_string(inst.clauses.size()));
  }
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open instance file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string format_instance(const Instance& instance) {
  std::ostringstream os;
  os << instance.n << ' ' << instance.clauses.size() << '\n';
  for (const auto& c : instance.clauses) os << c[0] << ' ' << c[1] << ' ' << c[2] << '\n';
  return os.str();
}

int clause_energy(std::span<const std::uint8_t> bits, const Clause& clause) {
  int sum = 0;
  for (int p : clause) {
    if (p < 1 || static_cast<std::size_t>(p) > bits.size()) {
      throw InvalidArgument("clause position outside the bitstring");
    }
    sum += bits[p - 1] ? 1 : 0;
  }
  return (1 - sum) * (1 - sum);
}

int clause_energy(std::uint64_t z, int n, const Clause& clause) {
  int sum = 0;
  for (int p : clause) sum += (z & qubit_mask(n, p)) ? 1 : 0;
  return (1 - sum) * (1 - sum);
}

std::vector<int> identity_order(const Instance& instance) {
  std::vector<int> order(instance.clauses.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  return order;
}

SolutionCountChain solution_counts(const Instance& instance, std::span<const int> order, int cap) {
  validate(instance);
  check_order(instance, order);
  check_enumerable(instance.n, cap);
  const int m = static_cast<int>(order.size());
  // survivors[k] = #bitstrings whose first violated clause has position >= k
  std::vector<std::uint64_t> first_violation(m + 1, 0);
  const std::uint64_t dim = std::uint64_t{1} << instance.n;
  for (std::uint64_t z = 0; z < dim; ++z) {
    int k = 0;
    while (k < m && satisfies(z, instance.n, instance.clauses[order[k]])) ++k;
    ++first_violation[k];
  }
  SolutionCountChain chain;
  chain.counts.assign(m + 1, 0);
  std::uint64_t acc = 0;
  for (int k = m; k >= 0; --k) {
    acc += first_violation[k];
    chain.counts[k] = acc;
  }
  for (int k = 0; k < m; ++k) {
    chain.reductions.push_back(chain.counts[k] == 0
                                   ? 0.0
                                   : static_cast<double>(chain.counts[k + 1]) /
                                         static_cast<double>(chain.counts[k]));
  }
  return chain;
}

std::vector<std::uint64_t> solutions(const Instance& instance, std::span<const int> order, int k,
                                     int cap) {
  validate(instance);
  check_order(instance, order);
  check_enumerable(instance.n, cap);
  if (k < 0 || k > static_cast<int>(order.size())) throw InvalidArgument("prefix length out of range");
  std::vector<std::uint64_t> out;
  const std::uint64_t dim = std::uint64_t{1} << instance.n;
  for (std::uint64_t z = 0; z < dim; ++z) {
    bool ok = true;
    for (int j = 0; j < k && ok; ++j) ok = satisfies(z, instance.n, instance.clauses[order[j]]);
    if (ok) out.push_back(z);
  }
  return out;
}

PathGaps path_gaps(const SolutionCountChain& chain) {
  if (chain.counts.size() < 2) throw InvalidArgument("solution chain has no steps");
  PathGaps out;
  for (std::size_t k = 0; k + 1 < chain.counts.size(); ++k) {
    if (chain.counts[k] == 0 || chain.counts[k + 1] == 0) {
      throw InvalidArgument("unsatisfiable prefix at step " + std::to_string(k + 1));
    }
    out.gaps.push_back(std::sqrt(static_cast<double>(chain.counts[k + 1]) /
                                 static_cast<double>(chain.counts[k])));
  }
  const auto it = std::min_element(out.gaps.begin(), out.gaps.end());
  out.min_gap = *it;
  out.argmin = static_cast<int>(it - out.gaps.begin());
  return out;
}

double grover_gap(int n) { return 1.0 / std::sqrt(std::ldexp(1.0, n)); }

OperatorSum clause_hamiltonian(int n, const Clause& clause) {
  // [1 - sum_a (1 - Z_a)/2]^2 = 1 - (1/2) sum_a Z_a + (1/2) sum_{a<b} Z_a Z_b
  const auto m = [n](int p) { return qubit_mask(n, p); };
  std::vector<PauliString> terms{PauliString(n, 1.0)};
  for (int p : clause) terms.emplace_back(n, 0, m(p), -0.5);
  terms.emplace_back(n, 0, m(clause[0]) | m(clause[1]), 0.5);
  terms.emplace_back(n, 0, m(clause[0]) | m(clause[2]), 0.5);
  terms.emplace_back(n, 0, m(clause[1]) | m(clause[2]), 0.5);
  return OperatorSum(n, std::move(terms));
}

OperatorSum problem_hamiltonian(const Instance& instance, std::span<const int> order, int k) {
  validate(instance);
  check_order(instance, order);
  if (k < 0 || k > static_cast<int>(order.size())) throw InvalidArgument("prefix length out of range");
  OperatorSum h(instance.n);
  for (int j = 0; j < k; ++j) h += clause_hamiltonian(instance.n, instance.clauses[order[j]]);
  return h;
}

StateVector solution_superposition(const Instance& instance, std::span<const int> order, int k) {
  const auto sols = solutions(instance, order, k);
  if (sols.empty()) {
    throw InvalidArgument("no bitstring satisfies the first " + std::to_string(k) + " clauses");
  }
  StateVector psi(instance.n);
  const double a = 1.0 / std::sqrt(static_cast<double>(sols.size()));
  for (auto z : sols) psi[z] = a;
  return psi;
}

Hamiltonian projector_hamiltonian(const Instance& instance, std::span<const int> order, int k) {
  return Hamiltonian::projector_complement(
      std::make_shared<const StateVector>(solution_superposition(instance, order, k)));
}

OrderStrategy parse_order_strategy(std::string_view name) {
  if (name == "given") return OrderStrategy::Given;
  if (name == "greedy" || name == "greedy-max-r") return OrderStrategy::GreedyMaxReduction;
  if (name == "random") return OrderStrategy::Random;
  throw InvalidArgument("unknown clause order strategy '" + std::string(name) + "'");
}

std::vector<int> order_clauses(const Instance& instance, OrderStrategy strategy,
                               std::uint64_t seed) {
  validate(instance);
  auto order = identity_order(instance);
  switch (strategy) {
    case OrderStrategy::Given:
      return order;
    case OrderStrategy::Random: {
      std::mt19937_64 rng(seed);
      for (std::size_t i = order.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng() % i);
        std::swap(order[i - 1], order[j]);
      }
      return order;
    }
    case OrderStrategy::GreedyMaxReduction: {
      check_enumerable(instance.n, kBruteForceCap);
      std::vector<std::uint64_t> alive;
      const std::uint64_t dim = std::uint64_t{1} << instance.n;
      alive.reserve(dim);
      for (std::uint64_t z = 0; z < dim; ++z) alive.push_back(z);
      std::vector<bool> used(instance.clauses.size(), false);
      std::vector<int> out;
      for (std::size_t step = 0; step < instance.clauses.size(); ++step) {
        int best = -1;
        std::size_t best_count = 0;
        for (std::size_t c = 0; c < instance.clauses.size(); ++c) {
          if (used[c]) continue;
          const auto count = static_cast<std::size_t>(
              std::count_if(alive.begin(), alive.end(), [&](std::uint64_t z) {
                return satisfies(z, instance.n, instance.clauses[c]);
              }));
          if (best < 0 || count > best_count) {
            best = static_cast<int>(c);
            best_count = count;
          }
        }
        used[best] = true;
        out.push_back(best);
        std::erase_if(alive, [&](std::uint64_t z) {
          return !satisfies(z, instance.n, instance.clauses[best]);
        });
      }
      return out;
    }
  }
  return order;
}

Instance random_instance(int n, int max_clauses, std::uint64_t seed, bool stop_at_unique) {
  if (n < 3 || n > kBruteForceCap) throw InvalidArgument("random instance needs 3 <= n <= 24");
  if (max_clauses < 1) throw InvalidArgument("random instance needs at least one clause");
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> planted(n);
  int ones = 0;
  do {
    ones = 0;
    for (auto& b : planted) {
      b = (rng() % 3 == 0) ? 1 : 0;
      ones += b;
    }
  } while (ones < 1 || n - ones < 2);

  Instance inst{n, {}};
  std::uint64_t count = std::uint64_t{1} << n;
  int attempts = 0;
  while (inst.clause_count() < max_clauses && attempts < 100 * max_clauses) {
    ++attempts;
    Clause c{};
    c[0] = static_cast<int>(rng() % n) + 1;
    do c[1] = static_cast<int>(rng() % n) + 1; while (c[1] == c[0]);
    do c[2] = static_cast<int>(rng() % n) + 1; while (c[2] == c[0] || c[2] == c[1]);
    std::sort(c.begin(), c.end());
    if (clause_energy(planted, c) != 0) continue;
    if (std::find(inst.clauses.begin(), inst.clauses.end(), c) != inst.clauses.end()) continue;
    inst.clauses.push_back(c);
    if (stop_at_unique) {
      count = solution_counts(inst, identity_order(inst)).counts.back();
      if (count == 1) break;
    }
  }
  return inst;
}

}  // namespace adiastep::ec3
