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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "qcollapse/error.hpp"
#include "qcollapse/observables.hpp"
#include "qcollapse/states.hpp"
#include "test_support.hpp"

namespace qcollapse {
namespace {

TEST(BasisKet, MixedAxes) {
  const AxisBit spec[] = {{KetAxis::kZ, 0}, {KetAxis::kX, 1}};
  const StateVector s = basis_ket(spec);
  const double h = 1 / std::sqrt(2.0);
  EXPECT_NEAR(s[0].real(), h, 1e-15);
  EXPECT_NEAR(s[1].real(), -h, 1e-15);
  EXPECT_EQ(s[2], Complex(0.0));
}

TEST(Singlet, Amplitudes) {
  const StateVector s = singlet(1);
  const double h = 1 / std::sqrt(2.0);
  EXPECT_NEAR(s[0b01].real(), h, 1e-15);
  EXPECT_NEAR(s[0b10].real(), -h, 1e-15);
}

TEST(Singlet, OnNonAdjacentSitesNeedsFiller) {
  EXPECT_THROW(singlet_on(1, 3, 3), Error);
  const StateVector s = singlet_on(1, 3, 3, StateVector::basis(1, 0));
  const double h = 1 / std::sqrt(2.0);
  EXPECT_NEAR(s[0b001].real(), h, 1e-15);
  EXPECT_NEAR(s[0b100].real(), -h, 1e-15);
}

TEST(Singlet, PairsLeaveUnpairedSitesInZero) {
  const std::pair<int, int> pairs[] = {{1, 3}};
  const StateVector s = singlet_pairs(pairs, 4);
  const StateVector expected = singlet_on(1, 3, 4, StateVector::basis(2, 0));
  EXPECT_LT(max_abs_diff(s, expected), 1e-15);
}

TEST(Singlet, InvariantUnderEqualRotations) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const MatrixOperator u = random_su2(seed);
    const StateVector s = singlet(1);
    const StateVector rotated = apply(kron(u, u), s);
    // det U = 1, so the singlet is invariant without a phase.
    EXPECT_LT(max_abs_diff(rotated, s), 1e-12);
  }
}

TEST(SpinZeroBasis, Orthonormal) {
  const auto b = spin_zero_basis();
  EXPECT_NEAR(b.phi0.norm(), 1.0, 1e-14);
  EXPECT_NEAR(b.phi1.norm(), 1.0, 1e-14);
  EXPECT_LT(std::abs(inner(b.phi0, b.phi1)), 1e-14);
}

TEST(SpinZeroBasis, Phi1Amplitudes) {
  const auto b = spin_zero_basis();
  const double s = 1 / std::sqrt(12.0);
  EXPECT_NEAR(b.phi1[0b0011].real(), 2 * s, 1e-14);
  EXPECT_NEAR(b.phi1[0b1100].real(), 2 * s, 1e-14);
  for (std::size_t idx : {0b0101u, 0b0110u, 0b1001u, 0b1010u}) {
    EXPECT_NEAR(b.phi1[idx].real(), -s, 1e-14);
  }
}

TEST(SpinZeroBasis, OverlapWithAllUpOutcome) {
  const auto b = spin_zero_basis();
  const AxisBit spec[] = {{KetAxis::kZ, 0}, {KetAxis::kZ, 0}, {KetAxis::kX, 0}, {KetAxis::kX, 0}};
  const StateVector ket = basis_ket(spec);
  EXPECT_NEAR(std::norm(inner(ket, b.phi1)), 1.0 / 12.0, 1e-15);
  EXPECT_LT(std::abs(inner(ket, b.phi0)), 1e-15);
}

TEST(TotalSpin, Multiplicities) {
  // Four spin-1/2: S=0 twice, S=1 three times (9 states), S=2 once (5 states).
  const auto d = hermitian_eigen(total_spin_squared(4));
  int zero = 0, two = 0, six = 0;
  for (double v : d.eigenvalues) {
    if (std::abs(v) < 1e-9) ++zero;
    if (std::abs(v - 2) < 1e-9) ++two;
    if (std::abs(v - 6) < 1e-9) ++six;
  }
  EXPECT_EQ(zero, 2);
  EXPECT_EQ(two, 9);
  EXPECT_EQ(six, 5);
}

TEST(TotalSpin, SingletAndTriplet) {
  const MatrixOperator s2 = total_spin_squared(2);
  EXPECT_LT(apply(s2, singlet(1)).norm(), 1e-14);
  const StateVector up = StateVector::basis(2, 0);
  EXPECT_LT(max_abs_diff(apply(s2, up), up * 2.0), 1e-14);
}

TEST(EtaTilde, UnitNormAndStructure) {
  const StateVector e = eta_tilde();
  EXPECT_EQ(e.n_qubits(), 8);
  EXPECT_NEAR(e.norm(), 1.0, 1e-12);
  // Qubits 1 and 2 are |0>: no amplitude on indices with either top bit set.
  for (std::size_t k = 0; k < e.dim(); ++k) {
    if (k >> 6) {
      EXPECT_EQ(e[k], Complex(0.0));
    }
  }
}

}  // namespace
}  // namespace qcollapse
