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
#include <functional>
#include <span>
#include <vector>

#include "adiastep/hamiltonian.hpp"

namespace adiastep {

/// In-place projection applied to every Krylov vector (e.g. onto a parity
/// sector). Must commute with the operator for the results to be meaningful.
using SubspaceProjector = std::function<void(std::span<Complex>)>;

struct LanczosOptions {
  int krylov_dim = 60;
  int max_restarts = 2000;
  /// Convergence threshold on the residual norm ||H x - theta x||.
  double tolerance = 1e-9;
  std::uint64_t seed = 0x5eed5eedULL;
};

struct EigenPairs {
  std::vector<double> values;
  std::vector<StateVector> vectors;
};

/// Lowest `count` eigenpairs by restarted Lanczos with full reorthogonalization
/// and explicit locking: each converged vector is deflated before the next
/// solve, so degenerate levels are resolved one copy at a time.
EigenPairs lanczos_lowest(const Hamiltonian& h, int count, const LanczosOptions& options = {},
                          const SubspaceProjector& projector = {});

/// Projects onto the +1 (sign > 0) or -1 eigenspace of the bit-flip string.
void project_parity(std::span<Complex> v, int sign);

}  // namespace adiastep
