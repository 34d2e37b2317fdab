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

// Named states: mixed z/x product kets, singlets, the four-qubit spin-zero
// basis and the post-measurement eight-qubit state.

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qcollapse/config.hpp"
#include "qcollapse/qcore.hpp"

namespace qcollapse {

enum class KetAxis { kZ, kX };

/// One qubit of a product ket. On the X axis bit 0 is (|0>+|1>)/√2 (the
/// σ_x = +1 eigenstate), bit 1 is (|0>-|1>)/√2.
struct AxisBit {
  KetAxis axis = KetAxis::kZ;
  int bit = 0;

  friend bool operator==(const AxisBit&, const AxisBit&) = default;
};

StateVector basis_ket(std::span<const AxisBit> spec, const Config& config = {});

/// (|01> - |10>)/√2 on sites (i, j) of an n-qubit register. `filler`
/// (n - 2 qubits) occupies the remaining sites in increasing order; it is
/// required when n > 2.
StateVector singlet_on(int i, int j, int n_qubits,
                       const std::optional<StateVector>& filler = std::nullopt,
                       const Config& config = {});

/// `pair_count` singlets on (1,2), (3,4), ...
StateVector singlet(int pair_count, const Config& config = {});

/// Singlets on each listed pair of an n-qubit register; sites that are in no
/// pair hold |0>.
StateVector singlet_pairs(std::span<const std::pair<int, int>> pairs,
                          int n_qubits, const Config& config = {});

/// Orthonormal basis of the total-spin-0 subspace of four qubits:
/// phi0 = s12 ⊗ s34, phi1 = (2 s13 ⊗ s24 - phi0)/√3.
struct SpinZeroBasis {
  StateVector phi0;
  StateVector phi1;
};

SpinZeroBasis spin_zero_basis();

/// 1/2 |0 0 +x +x> ⊗ (psi0 + √3 psi1) on eight qubits, with (psi0, psi1) the
/// spin-zero basis on sites 5-8.
StateVector eta_tilde();

/// (Σ_i σ_i / 2)^2 on n qubits.
MatrixOperator total_spin_squared(int n_qubits, const Config& config = {});

}  // namespace qcollapse
