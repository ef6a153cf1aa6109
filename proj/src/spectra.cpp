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

#include "adiastep/spectra.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "adiastep/error.hpp"
#include "adiastep/lanczos.hpp"
#include "adiastep/parallel.hpp"

namespace adiastep::spectra {

std::string_view sector_name(Sector s) {
  switch (s) {
    case Sector::All:
      return "all";
    case Sector::Even:
      return "even";
    case Sector::Odd:
      return "odd";
  }
  return "all";
}

Sector parse_sector(std::string_view name) {
  if (name == "all") return Sector::All;
  if (name == "even") return Sector::Even;
  if (name == "odd") return Sector::Odd;
  throw InvalidArgument("unknown sector '" + std::string(name) + "' (expected all, even or odd)");
}

std::string_view label_name(SectorLabel l) {
  switch (l) {
    case SectorLabel::Even:
      return "even";
    case SectorLabel::Odd:
      return "odd";
    case SectorLabel::Mixed:
      return "mixed";
  }
  return "mixed";
}

namespace {

int sector_sign(Sector s) { return s == Sector::Even ? 1 : (s == Sector::Odd ? -1 : 0); }

template <typename Matrix>
Matrix sector_block(const Matrix& h, std::span<const std::size_t> reps, std::size_t flip, int sign) {
  const auto d = static_cast<Eigen::Index>(reps.size());
  Matrix out(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    const auto za = static_cast<Eigen::Index>(reps[a]);
    const auto za_bar = static_cast<Eigen::Index>(reps[a] ^ flip);
    for (Eigen::Index b = 0; b < d; ++b) {
      const auto zb = static_cast<Eigen::Index>(reps[b]);
      const auto zb_bar = static_cast<Eigen::Index>(reps[b] ^ flip);
      out(a, b) = 0.5 * (h(za, zb) + h(za_bar, zb_bar) +
                         static_cast<double>(sign) * (h(za, zb_bar) + h(za_bar, zb)));
    }
  }
  return out;
}

template <typename Matrix>
void dense_solve(const Matrix& h, int n, int count, bool want_vectors, int sign,
                 SpectrumResult& result) {
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t flip = dim - 1;
  std::vector<std::size_t> reps;
  Matrix block;
  if (sign == 0) {
    block = h;
  } else {
    for (std::size_t z = 0; z < dim; ++z) {
      if (z < (z ^ flip)) reps.push_back(z);
    }
    block = sector_block(h, reps, flip, sign);
  }
  if (static_cast<Eigen::Index>(count) > block.rows()) {
    throw InvalidArgument("requested " + std::to_string(count) + " levels from a space of dimension " +
                          std::to_string(block.rows()));
  }
  const auto mode = want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(block, mode);
  if (solver.info() != Eigen::Success) throw ConvergenceError("dense eigensolver failed");
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < count; ++i) {
    result.eigenvalues.push_back(solver.eigenvalues()(i));
    if (!want_vectors) continue;
    std::vector<Complex> amps(dim);
    const auto col = solver.eigenvectors().col(i);
    if (sign == 0) {
      for (std::size_t z = 0; z < dim; ++z) amps[z] = Complex(col(static_cast<Eigen::Index>(z)));
    } else {
      for (std::size_t a = 0; a < reps.size(); ++a) {
        const Complex c = Complex(col(static_cast<Eigen::Index>(a))) * inv_sqrt2;
        amps[reps[a]] = c;
        amps[reps[a] ^ flip] = static_cast<double>(sign) * c;
      }
    }
    result.eigenvectors.emplace_back(n, std::move(amps));
  }
}

}  // namespace

SpectrumResult lowest_eigenpairs(const Hamiltonian& h, int count, bool want_vectors,
                                 const SolverOptions& options) {
  if (count < 1) throw InvalidArgument("eigenpair count must be positive");
  if (static_cast<std::size_t>(count) > h.dimension()) {
    throw InvalidArgument("eigenpair count exceeds the Hilbert space dimension");
  }
  const int sign = sector_sign(options.sector);
  if (sign != 0 && !h.commutes_with_parity()) {
    throw InvalidArgument("sector '" + std::string(sector_name(options.sector)) +
                          "' requested for a Hamiltonian without bit-flip symmetry");
  }
  if (sign != 0) want_vectors = true;

  const int n = h.qubits();
  bool dense = false;
  switch (options.method) {
    case Method::Dense:
      dense = true;
      break;
    case Method::Lanczos:
      dense = false;
      break;
    case Method::Auto:
      dense = n <= options.dense_max_qubits;
      break;
  }

  SpectrumResult result;
  if (dense) {
    if (h.is_real()) {
      dense_solve(h.to_dense_real(options.dense_cap), n, count, want_vectors, sign, result);
    } else {
      dense_solve(h.to_dense(options.dense_cap), n, count, want_vectors, sign, result);
    }
  } else {
    LanczosOptions lo;
    lo.krylov_dim = options.krylov_dim;
    lo.max_restarts = options.max_restarts;
    lo.tolerance = options.tolerance;
    lo.seed = options.seed;
    SubspaceProjector projector;
    if (sign != 0) projector = [sign](std::span<Complex> v) { project_parity(v, sign); };
    auto pairs = lanczos_lowest(h, count, lo, projector);
    result.eigenvalues = std::move(pairs.values);
    if (want_vectors) result.eigenvectors = std::move(pairs.vectors);
  }
  if (sign != 0) {
    result.sector_labels.assign(result.eigenvalues.size(),
                                sign > 0 ? SectorLabel::Even : SectorLabel::Odd);
  }
  return result;
}

SpectrumResult classify_sectors(SpectrumResult result, double cluster_tol, double threshold) {
  const std::size_t count = result.eigenvalues.size();
  if (result.eigenvectors.size() != count) {
    throw InvalidArgument("sector classification needs eigenvectors");
  }
  result.sector_labels.assign(count, SectorLabel::Mixed);
  std::size_t begin = 0;
  while (begin < count) {
    std::size_t end = begin + 1;
    while (end < count && result.eigenvalues[end] - result.eigenvalues[end - 1] < cluster_tol) ++end;
    const auto c = static_cast<Eigen::Index>(end - begin);
    std::vector<StateVector> flipped;
    for (std::size_t i = begin; i < end; ++i) flipped.push_back(parity_apply(result.eigenvectors[i]));
    Eigen::MatrixXcd p(c, c);
    for (Eigen::Index a = 0; a < c; ++a) {
      for (Eigen::Index b = 0; b < c; ++b) {
        p(a, b) = inner(result.eigenvectors[begin + a], flipped[b]);
      }
    }
    p = 0.5 * (p + p.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(p);
    const int n = result.eigenvectors[begin].qubits();
    std::vector<StateVector> rotated;
    std::vector<SectorLabel> labels;
    // Descending parity: even combinations first within a cluster.
    for (Eigen::Index j = c - 1; j >= 0; --j) {
      StateVector w(n);
      for (Eigen::Index a = 0; a < c; ++a) {
        w += solver.eigenvectors()(a, j) * result.eigenvectors[begin + a];
      }
      w.normalize();
      const double mu = parity_expectation(w);
      labels.push_back(mu > threshold ? SectorLabel::Even
                                      : (mu < -threshold ? SectorLabel::Odd : SectorLabel::Mixed));
      rotated.push_back(std::move(w));
    }
    for (Eigen::Index a = 0; a < c; ++a) {
      result.eigenvectors[begin + a] = std::move(rotated[a]);
      result.sector_labels[begin + a] = labels[a];
    }
    begin = end;
  }
  return result;
}

GapPoint gap_at(const Hamiltonian& h, Sector sector, const SolverOptions& options) {
  SolverOptions opts = options;
  opts.sector = sector;
  const auto r = lowest_eigenpairs(h, 2, false, opts);
  return {r.eigenvalues[1] - r.eigenvalues[0], r.eigenvalues[0], r.eigenvalues[1]};
}

namespace {

void check_sector(const models::InterpolationPath& path, Sector sector) {
  if (sector == Sector::All) return;
  for (const auto& node : path.nodes()) {
    if (!node.commutes_with_parity()) {
      throw InvalidArgument("sector '" + std::string(sector_name(sector)) + "' requested for a " +
                            std::string(models::family_name(path.family())) +
                            " path without bit-flip symmetry");
    }
  }
}

int resolve_threads(int threads) { return threads > 0 ? threads : default_thread_count(); }

// Golden-section search for the minimum of the segment gap on [lo, hi].
GapMinimum refine(const models::InterpolationPath& path, int k, double lo, double hi,
                  GapMinimum best, Sector sector, const ScanOptions& options) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto f = [&](double s) { return gap_at(path.segment_hamiltonian(k, s), sector, options.solver).gap; };
  auto consider = [&](double s, double g) {
    if (g < best.gap) {
      best.gap = g;
      best.local_s = s;
    }
  };
  double a = lo;
  double b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  consider(x1, f1);
  consider(x2, f2);
  while (b - a > options.refine_tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
      consider(x1, f1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
      consider(x2, f2);
    }
  }
  best.segment = k;
  best.global_s = path.global_s(k, best.local_s);
  return best;
}

GapMinimum refine_from_grid(const models::InterpolationPath& path, int k,
                            std::span<const GapSample> grid, Sector sector,
                            const ScanOptions& options) {
  std::size_t arg = 0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i].gap < grid[arg].gap) arg = i;
  }
  GapMinimum best{k, grid[arg].local_s, grid[arg].global_s, grid[arg].gap};
  const double lo = grid[arg == 0 ? 0 : arg - 1].local_s;
  const double hi = grid[std::min(arg + 1, grid.size() - 1)].local_s;
  if (hi - lo <= options.refine_tol) return best;
  return refine(path, k, lo, hi, best, sector, options);
}

void check_points(int points) {
  if (points < 2) throw InvalidArgument("gap scan needs at least 2 points per segment");
}

}  // namespace

GapMinimum segment_min_gap(const models::InterpolationPath& path, int segment, Sector sector,
                           const ScanOptions& options) {
  check_points(options.points);
  check_sector(path, sector);
  if (segment < 0 || segment >= path.segment_count()) throw InvalidArgument("segment out of range");
  std::vector<GapSample> grid(options.points);
  parallel_for(grid.size(), resolve_threads(options.threads), [&](std::size_t j) {
    const double s = (j + 1 == grid.size()) ? 1.0 : static_cast<double>(j) / (options.points - 1);
    const auto g = gap_at(path.segment_hamiltonian(segment, s), sector, options.solver);
    grid[j] = {segment, s, path.global_s(segment, s), g.gap, g.lambda0, g.lambda1};
  });
  return refine_from_grid(path, segment, grid, sector, options);
}

GapCurve gap_scan(const models::InterpolationPath& path, Sector sector, const ScanOptions& options) {
  check_points(options.points);
  check_sector(path, sector);
  const int segments = path.segment_count();
  const int per = options.points - 1;
  const std::size_t total = static_cast<std::size_t>(segments) * per + 1;
  GapCurve curve;
  curve.sector = sector;
  curve.samples.resize(total);
  const int threads = resolve_threads(options.threads);
  parallel_for(total, threads, [&](std::size_t i) {
    int k = static_cast<int>(i / per);
    double s = static_cast<double>(i % per) / per;
    if (k == segments) {
      k = segments - 1;
      s = 1.0;
    }
    const auto g = gap_at(path.segment_hamiltonian(k, s), sector, options.solver);
    curve.samples[i] = {k, s, path.global_s(k, s), g.gap, g.lambda0, g.lambda1};
  });

  curve.segment_minima.resize(segments);
  parallel_for(static_cast<std::size_t>(segments), threads, [&](std::size_t k) {
    // Segment k's closed grid ends on the first sample of segment k+1.
    std::vector<GapSample> grid(curve.samples.begin() + k * per,
                                curve.samples.begin() + (k + 1) * per + 1);
    grid.back().segment = static_cast<int>(k);
    grid.back().local_s = 1.0;
    curve.segment_minima[k] = refine_from_grid(path, static_cast<int>(k), grid, sector, options);
  });
  curve.minimum = *std::min_element(
      curve.segment_minima.begin(), curve.segment_minima.end(),
      [](const GapMinimum& a, const GapMinimum& b) { return a.gap < b.gap; });
  return curve;
}

std::vector<std::pair<int, double>> min_gap_vs_n(models::Family family, std::span<const int> ns,
                                                 Sector sector, const ScanOptions& options,
                                                 models::PathParams base) {
  std::vector<std::pair<int, double>> out;
  for (int n : ns) {
    models::PathParams params = base;
    if (family == models::Family::Cluster2dStepwise) {
      params.width = n;
      if (base.height <= 0) params.height = n;
      params.n = params.width * params.height;
    } else {
      params.n = n;
    }
    const auto path = models::make_path(family, params);
    out.emplace_back(n, gap_scan(path, sector, options).minimum.gap);
  }
  return out;
}

}  // namespace adiastep::spectra
