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

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "adiastep/hamiltonian.hpp"
#include "adiastep/models.hpp"

namespace adiastep::spectra {

enum class Sector { All, Even, Odd };
enum class SectorLabel { Even, Odd, Mixed };
enum class Method { Auto, Dense, Lanczos };

std::string_view sector_name(Sector s);
Sector parse_sector(std::string_view name);
std::string_view label_name(SectorLabel l);

struct SolverOptions {
  Method method = Method::Auto;
  /// Auto picks the dense solver up to this qubit count.
  int dense_max_qubits = 6;
  int dense_cap = kDefaultDenseCap;
  int krylov_dim = 60;
  int max_restarts = 2000;
  double tolerance = 1e-9;
  std::uint64_t seed = 0x5eed5eedULL;
  /// Restrict the search to one bit-flip parity sector.
  Sector sector = Sector::All;
};

struct SpectrumResult {
  double s = 0.0;
  /// True if `s` is the global path parameter, false if segment-local.
  bool global_s = true;
  std::vector<double> eigenvalues;
  std::vector<StateVector> eigenvectors;
  std::vector<SectorLabel> sector_labels;
};

/// The `count` lowest eigenvalues in ascending order, optionally with
/// eigenvectors. Sector-restricted solves always return vectors and labels.
SpectrumResult lowest_eigenpairs(const Hamiltonian& h, int count, bool want_vectors,
                                 const SolverOptions& options = {});

/// Labels each level by <P>, diagonalizing P inside degenerate clusters first.
SpectrumResult classify_sectors(SpectrumResult result, double cluster_tol = 1e-8,
                                double threshold = 0.99);

struct GapPoint {
  double gap;
  double lambda0;
  double lambda1;
};

/// Ground and first excited level of `h` within `sector`.
GapPoint gap_at(const Hamiltonian& h, Sector sector, const SolverOptions& options = {});

struct GapSample {
  int segment;
  double local_s;
  double global_s;
  double gap;
  double lambda0;
  double lambda1;
};

struct GapMinimum {
  int segment = 0;
  double local_s = 0.0;
  double global_s = 0.0;
  double gap = 0.0;
};

struct GapCurve {
  Sector sector = Sector::All;
  std::vector<GapSample> samples;
  /// Refined minimum of each segment.
  std::vector<GapMinimum> segment_minima;
  GapMinimum minimum;
};

struct ScanOptions {
  /// Grid points per segment, endpoints included.
  int points = 200;
  /// Golden-section refinement stops once the bracket is narrower than this.
  double refine_tol = 1e-7;
  /// 0 selects default_thread_count().
  int threads = 0;
  SolverOptions solver;
};

/// Gap along the path on a uniform grid per segment, with the minimum of each
/// segment refined by golden-section search.
GapCurve gap_scan(const models::InterpolationPath& path, Sector sector,
                  const ScanOptions& options = {});

/// Minimum gap of a single segment (grid plus refinement).
GapMinimum segment_min_gap(const models::InterpolationPath& path, int segment, Sector sector,
                           const ScanOptions& options = {});

/// Minimum gap per system size; `base` supplies everything except n.
std::vector<std::pair<int, double>> min_gap_vs_n(models::Family family, std::span<const int> ns,
                                                 Sector sector, const ScanOptions& options = {},
                                                 models::PathParams base = {});

}  // namespace adiastep::spectra
