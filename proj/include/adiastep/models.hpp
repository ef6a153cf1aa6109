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

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "adiastep/hamiltonian.hpp"
#include "adiastep/pauli.hpp"

namespace adiastep::ec3 {
struct Instance;
}

namespace adiastep::models {

enum class Boundary { Periodic, Open };

/// Undirected simple graph on nodes 1..n.
class LatticeGraph {
 public:
  explicit LatticeGraph(int node_count);
  LatticeGraph(int node_count, const std::vector<std::pair<int, int>>& links);

  /// Open chain 1-2-...-n.
  static LatticeGraph chain(int n);
  /// width x height grid, nodes numbered row by row.
  static LatticeGraph grid(int width, int height);

  int node_count() const { return n_; }
  bool linked(int a, int b) const;
  void add_link(int a, int b);
  /// Sorted neighbors of `node`.
  std::vector<int> neighbors(int node) const;
  int degree(int node) const;
  /// Links as (low, high) pairs in lexicographic order.
  std::vector<std::pair<int, int>> links() const;
  std::size_t link_count() const;

  friend bool operator==(const LatticeGraph&, const LatticeGraph&) = default;

 private:
  void check_node(int v) const;

  int n_;
  std::vector<std::vector<bool>> adjacency_;
};

/// One step of a stepwise cluster buildup: the links switched on together.
/// `focal` is the node that gains all the new links (alpha); `partners` are
/// the nodes it is joined to (beta, gamma).
struct BuildStep {
  std::vector<std::pair<int, int>> links;
  int focal = 0;
  std::vector<int> partners;
};

struct BuildOrder {
  int width = 0;
  int height = 0;
  std::vector<BuildStep> steps;

  int node_count() const { return width * height; }
  /// Lattices L_0 ... L_M after each prefix of steps.
  std::vector<LatticeGraph> lattices() const;
};

/// Snake order over the grid (row 1 left to right, row 2 right to left, ...),
/// each new node linked to all previously included grid neighbors.
BuildOrder lattice_build_order(int width, int height);

/// Validates an explicit order: links exist in the grid, each is added once,
/// and in a two-link step the focal node has no earlier links.
void validate_build_order(const BuildOrder& order);

/// Build-order file: "width height" followed by one step per line, either
/// "u v" (one link) or "u v u' v'" (two links). '#' starts a comment line.
BuildOrder parse_build_order(std::string_view text);
BuildOrder load_build_order(const std::string& path);

struct PenaltyConfig {
  double strength = 0.0;
};

/// (H_I, H_F) of the transverse-field Ising model.
std::pair<OperatorSum, OperatorSum> ising_endpoints(int n, Boundary boundary = Boundary::Periodic);

/// H_k for 0 <= k <= n: bonds 1..k switched on, fields on k+2..n; H_n adds the
/// wrap-around bond.
OperatorSum ising_step_hamiltonian(int n, int k);

/// -sum_mu X_mu prod_{nu ~ mu} Z_nu
OperatorSum cluster_hamiltonian(const LatticeGraph& lattice);

/// Cluster Hamiltonian on the chain with its first k links present.
OperatorSum cluster1d_step_hamiltonian(int n, int k);

/// Cluster state prod_{links} CZ |+...+>, evaluated from the sign formula.
StateVector cluster_state(const LatticeGraph& lattice);

/// CZ gates over every link of the lattice.
std::vector<GateSpec> cz_gates(const LatticeGraph& lattice);

/// (alpha/2) (1 - X...X)
OperatorSum penalty_term(int n, const PenaltyConfig& cfg);

enum class Family {
  IsingLinear,
  IsingStepwise,
  Cluster1dLinear,
  Cluster1dStepwise,
  Cluster2dStepwise,
  Ec3Projector,
};

std::string_view family_name(Family f);
Family parse_family(std::string_view name);
bool is_stepwise(Family f);

/// Ordered Hamiltonian chain H_0..H_M joined by straight segments of the given
/// durations. Segment k owns [t_k, t_{k+1}); t = tau belongs to the last one.
class InterpolationPath {
 public:
  InterpolationPath(Family family, std::vector<Hamiltonian> nodes, std::vector<double> durations);

  Family family() const { return family_; }
  int qubits() const { return nodes_.front().qubits(); }
  int segment_count() const { return static_cast<int>(nodes_.size()) - 1; }
  const std::vector<Hamiltonian>& nodes() const { return nodes_; }
  const Hamiltonian& node(int k) const { return nodes_.at(k); }
  const std::vector<double>& durations() const { return durations_; }
  double total_time() const { return boundaries_.back(); }
  /// Start time of segment k (k = M gives tau).
  double segment_start(int k) const { return boundaries_.at(k); }

  /// (1-s) H_k + s H_{k+1}
  Hamiltonian segment_hamiltonian(int k, double s) const;
  /// Segment index and local parameter that own time t.
  std::pair<int, double> locate(double t) const;
  /// Global parameter t / tau of a segment-local point.
  double global_s(int k, double s) const;

  /// Same chain with durations rescaled to total time tau.
  InterpolationPath with_total_time(double tau) const;

 private:
  Family family_;
  std::vector<Hamiltonian> nodes_;
  std::vector<double> durations_;
  std::vector<double> boundaries_;
};

struct PathParams {
  int n = 0;
  int width = 0;
  int height = 0;
  Boundary boundary = Boundary::Periodic;
  /// Per-segment duration; total time is M * segment_duration.
  double segment_duration = 1.0;
  /// Optional explicit per-segment durations (overrides segment_duration).
  std::vector<double> durations;
  /// Explicit 2D build order; defaults to the snake order.
  std::optional<BuildOrder> build_order;
  /// Time-independent parity penalty added to every node (Ising families).
  std::optional<PenaltyConfig> penalty;
  /// EC3 instance and clause order (0-based clause indices) for ec3-projector.
  const ec3::Instance* instance = nullptr;
  std::vector<int> clause_order;
};

InterpolationPath make_path(Family family, const PathParams& params);

/// H(t) along the path.
Hamiltonian path_hamiltonian(const InterpolationPath& path, double t);

}  // namespace adiastep::models
