// Copyright 2026 The qcollapse Authors
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

#include <string_view>

namespace qcollapse {

/// Numerical tolerances and size limits shared by every module.
///
/// All operations take a `const Config&` defaulting to `Config{}`; there is
/// no global state. Individual fields can be overridden by name through
/// `set()`, which is how the CLI applies `--tol name=value`.
struct Config {
  double norm = 1e-10;      // unit-norm checks
  double orth = 1e-10;      // pairwise orthonormality
  double herm = 1e-10;      // Hermiticity / unitarity
  double eig = 1e-12;       // Jacobi off-diagonal residual
  double recon = 1e-9;      // spectral reconstruction, projector completeness
  double cluster = 1e-8;    // eigenvalues closer than this share an eigenspace
  double inv = 1e-9;        // invariance verdicts
  double zero = 1e-14;      // probabilities at or below this are impossible
  double corr = 1e-9;       // perfect-correlation / certainty verdicts
  double assert_prob = 1e-10;  // `assert_prob` comparison in scenarios

  int max_qubits = 10;
  int max_sweeps = 100;

  /// Overrides the tolerance called `name`. Returns false for unknown names
  /// or non-positive values.
  bool set(std::string_view name, double value);
};

}  // namespace qcollapse
