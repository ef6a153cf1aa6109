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

#include "adiastep/models.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "adiastep/ec3.hpp"
#include "adiastep/error.hpp"

namespace adiastep::models {

// -------------------------------------------------------------- LatticeGraph

LatticeGraph::LatticeGraph(int node_count) : n_(node_count) {
  if (node_count < 0) throw InvalidArgument("negative node count");
  adjacency_.assign(node_count, std::vector<bool>(node_count, false));
}

LatticeGraph::LatticeGraph(int node_count, const std::vector<std::pair<int, int>>& links)
    : LatticeGraph(node_count) {
  for (const auto& [a, b] : links) add_link(a, b);
}

LatticeGraph LatticeGraph::chain(int n) {
  LatticeGraph g(n);
  for (int i = 1; i < n; ++i) g.add_link(i, i + 1);
  return g;
}

LatticeGraph LatticeGraph::grid(int width, int height) {
  if (width < 1 || height < 1) throw InvalidArgument("grid dimensions must be positive");
  LatticeGraph g(width * height);
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const int v = r * width + c + 1;
      if (c + 1 < width) g.add_link(v, v + 1);
      if (r + 1 < height) g.add_link(v, v + width);
    }
  }
  return g;
}

void LatticeGraph::check_node(int v) const {
  if (v < 1 || v > n_) {
    throw InvalidArgument("node " + std::to_string(v) + " outside [1, " + std::to_string(n_) +
                          "]");
  }
}

bool LatticeGraph::linked(int a, int b) const {
  check_node(a);
  check_node(b);
  return adjacency_[a - 1][b - 1];
}

void LatticeGraph::add_link(int a, int b) {
  check_node(a);
  check_node(b);
  if (a == b) throw InvalidArgument("self-link on node " + std::to_string(a));
  adjacency_[a - 1][b - 1] = true;
  adjacency_[b - 1][a - 1] = true;
}

std::vector<int> LatticeGraph::neighbors(int node) const {
  check_node(node);
  std::vector<int> out;
  for (int v = 1; v <= n_; ++v) {
    if (adjacency_[node - 1][v - 1]) out.push_back(v);
  }
  return out;
}

int LatticeGraph::degree(int node) const { return static_cast<int>(neighbors(node).size()); }

std::vector<std::pair<int, int>> LatticeGraph::links() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 1; a <= n_; ++a) {
    for (int b = a + 1; b <= n_; ++b) {
      if (adjacency_[a - 1][b - 1]) out.emplace_back(a, b);
    }
  }
  return out;
}

std::size_t LatticeGraph::link_count() const { return links().size(); }

// ---------------------------------------------------------------- BuildOrder

std::vector<LatticeGraph> BuildOrder::lattices() const {
  std::vector<LatticeGraph> out;
  LatticeGraph g(node_count());
  out.push_back(g);
  for (const auto& step : steps) {
    for (const auto& [a, b] : step.links) g.add_link(a, b);
    out.push_back(g);
  }
  return out;
}

BuildOrder lattice_build_order(int width, int height) {
  if (width < 1 || height < 1) throw InvalidArgument("grid dimensions must be positive");
  BuildOrder order{width, height, {}};
  const LatticeGraph grid = LatticeGraph::grid(width, height);
  std::vector<bool> included(width * height + 1, false);
  for (int r = 0; r < height; ++r) {
    for (int i = 0; i < width; ++i) {
      const int c = (r % 2 == 0) ? i : width - 1 - i;
      const int v = r * width + c + 1;
      BuildStep step;
      step.focal = v;
      for (int u : grid.neighbors(v)) {
        if (included[u]) {
          step.links.emplace_back(u, v);
          step.partners.push_back(u);
        }
      }
      included[v] = true;
      if (!step.links.empty()) order.steps.push_back(std::move(step));
    }
  }
  return order;
}

void validate_build_order(const BuildOrder& order) {
  if (order.width < 1 || order.height < 1) throw InvalidArgument("grid dimensions must be positive");
  if (order.steps.empty()) throw InvalidArgument("build order has no steps");
  LatticeGraph g(order.node_count());
  for (std::size_t k = 0; k < order.steps.size(); ++k) {
    const auto& step = order.steps[k];
    const std::string where = "build step " + std::to_string(k + 1);
    if (step.links.empty() || step.links.size() > 2) {
      throw InvalidArgument(where + ": a step adds one or two links");
    }
    for (const auto& [a, b] : step.links) {
      if (a == b) throw InvalidArgument(where + ": self-link");
      if (g.linked(a, b)) throw InvalidArgument(where + ": link added twice");
    }
    if (g.degree(step.focal) != 0 && step.links.size() == 2) {
      throw InvalidArgument(where + ": focal node of a two-link step already has links");
    }
    for (const auto& [a, b] : step.links) {
      if (a != step.focal && b != step.focal) {
        throw InvalidArgument(where + ": link does not touch the focal node");
      }
    }
    for (const auto& [a, b] : step.links) g.add_link(a, b);
  }
}

namespace {

bool is_comment_or_blank(const std::string& line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

}  // namespace

BuildOrder parse_build_order(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  BuildOrder order;
  bool have_header = false;
  LatticeGraph g(0);
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment_or_blank(line)) continue;
    std::istringstream ls(line);
    std::vector<long> values;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        values.push_back(std::stol(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw InvalidArgument("build order line " + std::to_string(line_no) +
                              ": not an integer: '" + tok + "'");
      }
    }
    if (!have_header) {
      if (values.size() != 2) {
        throw InvalidArgument("build order line " + std::to_string(line_no) +
                              ": expected 'width height'");
      }
      order.width = static_cast<int>(values[0]);
      order.height = static_cast<int>(values[1]);
      if (order.width < 1 || order.height < 1) {
        throw InvalidArgument("build order: grid dimensions must be positive");
      }
      g = LatticeGraph(order.width * order.height);
      have_header = true;
      continue;
    }
    if (values.size() != 2 && values.size() != 4) {
      throw InvalidArgument("build order line " + std::to_string(line_no) +
                            ": expected 'u v' or 'u v u2 v2'");
    }
    BuildStep step;
    for (std::size_t i = 0; i < values.size(); i += 2) {
      const int a = static_cast<int>(values[i]);
      const int b = static_cast<int>(values[i + 1]);
      if (a < 1 || b < 1 || a > order.node_count() || b > order.node_count()) {
        throw InvalidArgument("build order line " + std::to_string(line_no) +
                              ": node index out of range");
      }
      step.links.emplace_back(a, b);
    }
    if (step.links.size() == 2) {
      const auto [a1, b1] = step.links[0];
      const auto [a2, b2] = step.links[1];
      if (a1 == a2 || a1 == b2) {
        step.focal = a1;
      } else if (b1 == a2 || b1 == b2) {
        step.focal = b1;
      } else {
        throw InvalidArgument("build order line " + std::to_string(line_no) +
                              ": two-link step must share a node");
      }
    } else {
      const auto [a, b] = step.links[0];
      // The endpoint without earlier links is the node being attached.
      step.focal = (g.degree(a) == 0 && g.degree(b) != 0) ? a : b;
    }
    for (const auto& [a, b] : step.links) step.partners.push_back(a == step.focal ? b : a);
    for (const auto& [a, b] : step.links) {
      if (a != b && !g.linked(a, b)) g.add_link(a, b);
    }
    order.steps.push_back(std::move(step));
  }
  if (!have_header) throw InvalidArgument("build order: missing 'width height' header");
  validate_build_order(order);
  return order;
}

BuildOrder load_build_order(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open build order file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_build_order(buf.str());
}

// -------------------------------------------------------------- Hamiltonians

namespace {

void require_qubits(int n, int minimum) {
  if (n < minimum || n > kMaxQubits) {
    throw InvalidArgument("qubit count " + std::to_string(n) + " outside [" +
                          std::to_string(minimum) + ", " + std::to_string(kMaxQubits) + "]");
  }
}

PauliString zz(int n, int i, int j, double c) {
  return PauliString(n, 0, qubit_mask(n, i) | qubit_mask(n, j), c);
}

PauliString x_at(int n, int i, double c) { return PauliString(n, qubit_mask(n, i), 0, c); }

OperatorSum transverse_field(int n) {
  std::vector<PauliString> terms;
  for (int i = 1; i <= n; ++i) terms.push_back(x_at(n, i, -1.0));
  return OperatorSum(n, std::move(terms));
}

}  // namespace

std::pair<OperatorSum, OperatorSum> ising_endpoints(int n, Boundary boundary) {
  require_qubits(n, 2);
  std::vector<PauliString> bonds;
  for (int i = 1; i < n; ++i) bonds.push_back(zz(n, i, i + 1, -1.0));
  if (boundary == Boundary::Periodic) bonds.push_back(zz(n, n, 1, -1.0));
  return {transverse_field(n), OperatorSum(n, std::move(bonds))};
}

OperatorSum ising_step_hamiltonian(int n, int k) {
  require_qubits(n, 2);
  if (k < 0 || k > n) {
    throw InvalidArgument("Ising step index " + std::to_string(k) + " outside [0, " +
                          std::to_string(n) + "]");
  }
  std::vector<PauliString> terms;
  for (int i = 1; i <= std::min(k, n - 1); ++i) terms.push_back(zz(n, i, i + 1, -1.0));
  if (k == n) terms.push_back(zz(n, n, 1, -1.0));
  for (int i = (k == 0 ? 1 : k + 2); i <= n; ++i) terms.push_back(x_at(n, i, -1.0));
  return OperatorSum(n, std::move(terms));
}

OperatorSum cluster_hamiltonian(const LatticeGraph& lattice) {
  const int n = lattice.node_count();
  require_qubits(n, 1);
  std::vector<PauliString> terms;
  for (int mu = 1; mu <= n; ++mu) {
    std::uint64_t z = 0;
    for (int nu : lattice.neighbors(mu)) z |= qubit_mask(n, nu);
    terms.emplace_back(n, qubit_mask(n, mu), z, -1.0);
  }
  return OperatorSum(n, std::move(terms));
}

OperatorSum cluster1d_step_hamiltonian(int n, int k) {
  require_qubits(n, 1);
  if (k < 0 || k > n - 1) {
    throw InvalidArgument("cluster step index " + std::to_string(k) + " outside [0, " +
                          std::to_string(n - 1) + "]");
  }
  LatticeGraph g(n);
  for (int i = 1; i <= k; ++i) g.add_link(i, i + 1);
  return cluster_hamiltonian(g);
}

StateVector cluster_state(const LatticeGraph& lattice) {
  const int n = lattice.node_count();
  require_qubits(n, 1);
  const auto links = lattice.links();
  StateVector psi(n);
  const double a = 1.0 / std::sqrt(static_cast<double>(psi.dimension()));
  for (std::size_t z = 0; z < psi.dimension(); ++z) {
    int phase = 0;
    for (const auto& [mu, nu] : links) {
      if ((z & qubit_mask(n, mu)) && (z & qubit_mask(n, nu))) ++phase;
    }
    psi[z] = (phase % 2) ? -a : a;
  }
  return psi;
}

std::vector<GateSpec> cz_gates(const LatticeGraph& lattice) {
  std::vector<GateSpec> gates;
  for (const auto& [a, b] : lattice.links()) gates.push_back(GateSpec::cz(a, b));
  return gates;
}

OperatorSum penalty_term(int n, const PenaltyConfig& cfg) {
  require_qubits(n, 1);
  if (!(cfg.strength >= 0.0)) throw InvalidArgument("penalty strength must be non-negative");
  const std::uint64_t all_x = (~std::uint64_t{0}) >> (64 - n);
  return OperatorSum(n, {PauliString(n, 0.5 * cfg.strength),
                         PauliString(n, all_x, 0, -0.5 * cfg.strength)});
}

// ------------------------------------------------------------------- paths

std::string_view family_name(Family f) {
  switch (f) {
    case Family::IsingLinear: return "ising-linear";
    case Family::IsingStepwise: return "ising-stepwise";
    case Family::Cluster1dLinear: return "cluster1d-linear";
    case Family::Cluster1dStepwise: return "cluster1d-stepwise";
    case Family::Cluster2dStepwise: return "cluster2d-stepwise";
    case Family::Ec3Projector: return "ec3-projector";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::IsingLinear, Family::IsingStepwise, Family::Cluster1dLinear,
                   Family::Cluster1dStepwise, Family::Cluster2dStepwise, Family::Ec3Projector}) {
    if (family_name(f) == name) return f;
  }
  throw InvalidArgument("unknown model family '" + std::string(name) + "'");
}

bool is_stepwise(Family f) {
  return f != Family::IsingLinear && f != Family::Cluster1dLinear;
}

InterpolationPath::InterpolationPath(Family family, std::vector<Hamiltonian> nodes,
                                     std::vector<double> durations)
    : family_(family), nodes_(std::move(nodes)), durations_(std::move(durations)) {
  if (nodes_.size() < 2) throw InvalidArgument("a path needs at least two Hamiltonians");
  if (durations_.size() != nodes_.size() - 1) {
    throw InvalidArgument("one duration per segment required");
  }
  for (const auto& h : nodes_) {
    if (h.qubits() != nodes_.front().qubits()) {
      throw InvalidArgument("path Hamiltonians differ in qubit count");
    }
  }
  boundaries_.push_back(0.0);
  for (double d : durations_) {
    if (!(d > 0.0) || !std::isfinite(d)) throw InvalidArgument("segment durations must be positive");
    boundaries_.push_back(boundaries_.back() + d);
  }
}

Hamiltonian InterpolationPath::segment_hamiltonian(int k, double s) const {
  if (k < 0 || k >= segment_count()) throw InvalidArgument("segment index out of range");
  if (!(s >= 0.0 && s <= 1.0)) throw InvalidArgument("segment parameter outside [0, 1]");
  if (s == 0.0) return nodes_[k];
  if (s == 1.0) return nodes_[k + 1];
  return interpolate(nodes_[k], nodes_[k + 1], s);
}

std::pair<int, double> InterpolationPath::locate(double t) const {
  const double tau = total_time();
  if (!(t >= 0.0 && t <= tau)) throw InvalidArgument("time outside [0, tau]");
  const int m = segment_count();
  if (t == tau) return {m - 1, 1.0};
  const auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), t);
  const int k = std::min(static_cast<int>(it - boundaries_.begin()) - 1, m - 1);
  const double s = (t - boundaries_[k]) / durations_[k];
  return {k, std::clamp(s, 0.0, 1.0)};
}

double InterpolationPath::global_s(int k, double s) const {
  return (boundaries_.at(k) + s * durations_.at(k)) / total_time();
}

InterpolationPath InterpolationPath::with_total_time(double tau) const {
  if (!(tau > 0.0)) throw InvalidArgument("total time must be positive");
  const double scale = tau / total_time();
  std::vector<double> d = durations_;
  for (auto& v : d) v *= scale;
  return InterpolationPath(family_, nodes_, std::move(d));
}

namespace {

std::vector<Hamiltonian> as_nodes(std::vector<OperatorSum> ops, const PathParams& p) {
  std::vector<Hamiltonian> nodes;
  nodes.reserve(ops.size());
  for (auto& op : ops) {
    if (p.penalty) op += penalty_term(op.qubits(), *p.penalty);
    nodes.emplace_back(std::move(op));
  }
  return nodes;
}

}  // namespace

InterpolationPath make_path(Family family, const PathParams& p) {
  std::vector<Hamiltonian> nodes;
  switch (family) {
    case Family::IsingLinear: {
      auto [hi, hf] = ising_endpoints(p.n, p.boundary);
      nodes = as_nodes({hi, hf}, p);
      break;
    }
    case Family::IsingStepwise: {
      require_qubits(p.n, 2);
      std::vector<OperatorSum> ops;
      // With open boundaries H_{n-1} already is the final Hamiltonian.
      const int last = (p.boundary == Boundary::Periodic) ? p.n : p.n - 1;
      for (int k = 0; k <= last; ++k) ops.push_back(ising_step_hamiltonian(p.n, k));
      nodes = as_nodes(std::move(ops), p);
      break;
    }
    case Family::Cluster1dLinear: {
      require_qubits(p.n, 2);
      nodes = as_nodes({transverse_field(p.n), cluster_hamiltonian(LatticeGraph::chain(p.n))}, p);
      break;
    }
    case Family::Cluster1dStepwise: {
      require_qubits(p.n, 2);
      std::vector<OperatorSum> ops;
      for (int k = 0; k <= p.n - 1; ++k) ops.push_back(cluster1d_step_hamiltonian(p.n, k));
      nodes = as_nodes(std::move(ops), p);
      break;
    }
    case Family::Cluster2dStepwise: {
      BuildOrder order;
      if (p.build_order) {
        order = *p.build_order;
        validate_build_order(order);
      } else {
        order = lattice_build_order(p.width, p.height);
      }
      if (p.n != 0 && p.n != order.node_count()) {
        throw InvalidArgument("n does not match lattice dimensions");
      }
      if (order.steps.empty()) throw InvalidArgument("lattice build order has no steps");
      require_qubits(order.node_count(), 2);
      std::vector<OperatorSum> ops;
      for (const auto& g : order.lattices()) ops.push_back(cluster_hamiltonian(g));
      nodes = as_nodes(std::move(ops), p);
      break;
    }
    case Family::Ec3Projector: {
      if (p.instance == nullptr) throw InvalidArgument("ec3-projector path needs an instance");
      if (p.penalty) throw InvalidArgument("parity penalty does not apply to ec3-projector");
      const auto order = p.clause_order.empty() ? ec3::identity_order(*p.instance) : p.clause_order;
      if (static_cast<int>(order.size()) != p.instance->clause_count()) {
        throw InvalidArgument("clause order must list every clause");
      }
      if (order.empty()) throw InvalidArgument("ec3-projector path needs at least one clause");
      const auto chain = ec3::solution_counts(*p.instance, order);
      if (chain.counts.back() == 0) throw InvalidArgument("instance is unsatisfiable");
      for (int k = 0; k <= p.instance->clause_count(); ++k) {
        nodes.push_back(ec3::projector_hamiltonian(*p.instance, order, k));
      }
      break;
    }
  }
  const auto segments = nodes.size() - 1;
  std::vector<double> durations = p.durations;
  if (durations.empty()) {
    if (!(p.segment_duration > 0.0)) throw InvalidArgument("segment duration must be positive");
    durations.assign(segments, p.segment_duration);
  } else if (durations.size() != segments) {
    throw InvalidArgument("expected " + std::to_string(segments) + " segment durations, got " +
                          std::to_string(durations.size()));
  }
  return InterpolationPath(family, std::move(nodes), std::move(durations));
}

Hamiltonian path_hamiltonian(const InterpolationPath& path, double t) {
  const auto [k, s] = path.locate(t);
  return path.segment_hamiltonian(k, s);
}

}  // namespace adiastep::models
