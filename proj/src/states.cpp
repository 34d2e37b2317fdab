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

#include "qcollapse/states.hpp"

#include <cmath>

#include <fmt/format.h>

#include "qcollapse/error.hpp"

namespace qcollapse {
namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

CVector two_qubit_singlet() { return {0.0, kInvSqrt2, -kInvSqrt2, 0.0}; }

void check_qubits(int n, const Config& config) {
  if (n < 1 || n > config.max_qubits) {
    throw Error(ErrorKind::kCapacity,
                fmt::format("qubit count {} outside [1, {}]", n,
                            config.max_qubits));
  }
}

}  // namespace

StateVector basis_ket(std::span<const AxisBit> spec, const Config& config) {
  if (spec.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "basis_ket: empty specification");
  }
  check_qubits(static_cast<int>(spec.size()), config);
  CVector amps{1.0};
  for (const AxisBit& q : spec) {
    if (q.bit != 0 && q.bit != 1) {
      throw Error(ErrorKind::kInvalidArgument,
                  fmt::format("basis_ket: bit must be 0 or 1, got {}", q.bit));
    }
    Complex lo, hi;
    if (q.axis == KetAxis::kZ) {
      lo = q.bit == 0 ? 1.0 : 0.0;
      hi = q.bit == 0 ? 0.0 : 1.0;
    } else {
      lo = kInvSqrt2;
      hi = q.bit == 0 ? kInvSqrt2 : -kInvSqrt2;
    }
    CVector next(amps.size() * 2);
    for (std::size_t i = 0; i < amps.size(); ++i) {
      next[2 * i] = amps[i] * lo;
      next[2 * i + 1] = amps[i] * hi;
    }
    amps = std::move(next);
  }
  return StateVector(static_cast<int>(spec.size()), std::move(amps));
}

StateVector singlet_on(int i, int j, int n_qubits,
                       const std::optional<StateVector>& filler,
                       const Config& config) {
  check_qubits(n_qubits, config);
  if (n_qubits < 2) {
    throw Error(ErrorKind::kInvalidArgument, "singlet needs at least two qubits");
  }
  if (i == j) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("singlet sites collide at {}", i));
  }
  if (i < 1 || j < 1 || i > n_qubits || j > n_qubits) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("singlet sites ({}, {}) outside [1, {}]", i, j,
                            n_qubits));
  }
  CVector rest{1.0};
  if (n_qubits > 2) {
    if (!filler) {
      throw Error(ErrorKind::kInvalidArgument,
                  "singlet_on: filler state required for the remaining sites");
    }
    if (filler->n_qubits() != n_qubits - 2) {
      throw Error(ErrorKind::kDimensionMismatch,
                  fmt::format("singlet_on: filler has {} qubits, expected {}",
                              filler->n_qubits(), n_qubits - 2));
    }
    rest.assign(filler->amplitudes().begin(), filler->amplitudes().end());
  } else if (filler) {
    throw Error(ErrorKind::kDimensionMismatch,
                "singlet_on: no sites left for the filler state");
  }
  const int sites[] = {i, j};
  return StateVector(n_qubits,
                     interleave(two_qubit_singlet(), sites, rest, n_qubits));
}

StateVector singlet(int pair_count, const Config& config) {
  if (pair_count < 1) {
    throw Error(ErrorKind::kInvalidArgument, "singlet: pair_count must be >= 1");
  }
  check_qubits(2 * pair_count, config);
  StateVector out(2, two_qubit_singlet());
  for (int k = 1; k < pair_count; ++k) {
    out = tensor(out, StateVector(2, two_qubit_singlet()), config);
  }
  return out;
}

StateVector singlet_pairs(std::span<const std::pair<int, int>> pairs,
                          int n_qubits, const Config& config) {
  if (pairs.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "singlet_pairs: no pairs given");
  }
  check_qubits(n_qubits, config);
  std::vector<int> sites;
  CVector part{1.0};
  for (const auto& [i, j] : pairs) {
    if (i == j) {
      throw Error(ErrorKind::kInvalidArgument,
                  fmt::format("singlet sites collide at {}", i));
    }
    sites.push_back(i);
    sites.push_back(j);
    CVector next;
    next.reserve(part.size() * 4);
    for (const auto& a : part) {
      for (const auto& b : two_qubit_singlet()) next.push_back(a * b);
    }
    part = std::move(next);
  }
  if (sites.size() > static_cast<std::size_t>(n_qubits)) {
    throw Error(ErrorKind::kInvalidArgument, "singlet_pairs: too many sites");
  }
  // interleave validates range and uniqueness of the sites.
  CVector rest(std::size_t{1} << (n_qubits - static_cast<int>(sites.size())));
  rest[0] = 1.0;
  return StateVector(n_qubits, interleave(part, sites, rest, n_qubits));
}

SpinZeroBasis spin_zero_basis() {
  const StateVector s = singlet(1);
  StateVector phi0 = tensor(s, s);
  const StateVector s13_s24 = singlet_on(1, 3, 4, s);
  StateVector phi1 = (s13_s24 * 2.0 - phi0) * (1.0 / std::sqrt(3.0));
  return {std::move(phi0), std::move(phi1)};
}

StateVector eta_tilde() {
  const AxisBit alice[] = {{KetAxis::kZ, 0}, {KetAxis::kZ, 0},
                           {KetAxis::kX, 0}, {KetAxis::kX, 0}};
  const SpinZeroBasis bob = spin_zero_basis();
  const StateVector bob_factor = bob.phi0 + bob.phi1 * std::sqrt(3.0);
  return tensor(basis_ket(alice), bob_factor) * 0.5;
}

MatrixOperator total_spin_squared(int n_qubits, const Config& config) {
  check_qubits(n_qubits, config);
  const std::size_t dim = std::size_t{1} << n_qubits;
  MatrixBuilder b(dim);
  for (std::size_t c = 0; c < dim; ++c) b.at(c, c) += 0.75 * n_qubits;
  auto sign = [n_qubits](std::size_t index, int site) {
    return ((index >> (n_qubits - site)) & 1U) ? -1.0 : 1.0;
  };
  // Cross terms σ_a,i σ_a,j / 4 for i != j, summed over a in {x, y, z}.
  for (int i = 1; i <= n_qubits; ++i) {
    for (int j = 1; j <= n_qubits; ++j) {
      if (i == j) continue;
      const std::size_t flip = (std::size_t{1} << (n_qubits - i)) |
                               (std::size_t{1} << (n_qubits - j));
      for (std::size_t c = 0; c < dim; ++c) {
        const double zz = sign(c, i) * sign(c, j);
        b.at(c, c) += 0.25 * zz;           // z
        b.at(c ^ flip, c) += 0.25;         // x
        b.at(c ^ flip, c) += -0.25 * zz;   // y: (i s_i)(i s_j) = -s_i s_j
      }
    }
  }
  return std::move(b).build();
}

}  // namespace qcollapse
