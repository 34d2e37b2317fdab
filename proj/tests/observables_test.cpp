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

TEST(SpectralObservable, RejectsDuplicateEigenvalues) {
  std::vector<Branch> b = {{1.0, {StateVector::basis(1, 0)}}, {1.0, {StateVector::basis(1, 1)}}};
  EXPECT_THROW(SpectralObservable(b, {1}), Error);
}

TEST(SpectralObservable, RejectsIncompleteBasis) {
  std::vector<Branch> b = {{1.0, {StateVector::basis(2, 0)}}, {-1.0, {StateVector::basis(2, 1)}}};
  EXPECT_THROW(SpectralObservable(b, {1, 2}), Error);
}

TEST(SpectralObservable, RejectsNonOrthogonal) {
  const StateVector plus(1, {1 / std::sqrt(2.0), 1 / std::sqrt(2.0)});
  std::vector<Branch> b = {{1.0, {StateVector::basis(1, 0)}}, {-1.0, {plus}}};
  EXPECT_THROW(SpectralObservable(b, {1}), Error);
}

TEST(SpectralObservable, BranchesSortedDescending) {
  std::vector<Branch> b = {{-1.0, {StateVector::basis(1, 1)}}, {1.0, {StateVector::basis(1, 0)}}};
  const SpectralObservable o(b, {1});
  EXPECT_EQ(o.spectrum(), (std::vector<double>{1.0, -1.0}));
}

TEST(SpectralObservable, FromMatrixClustersDegenerateEigenvalues) {
  const MatrixOperator zz = kron(pauli_z(), pauli_z());
  const auto o = SpectralObservable::from_matrix(zz);
  ASSERT_EQ(o.branches().size(), 2u);
  EXPECT_EQ(o.branches()[0].basis.size(), 2u);
  EXPECT_LT(max_abs_diff(o.matrix(), zz), 1e-12);
}

TEST(SpectralObservable, ProjectorsSumToIdentity) {
  const SpectralObservable f = observable_F();
  MatrixOperator sum = MatrixOperator::zero(16);
  for (std::size_t k = 0; k < f.branches().size(); ++k) sum = sum + f.projector(k);
  EXPECT_LT(max_abs_diff(sum, MatrixOperator::identity(16)), 1e-12);
}

TEST(ObservableF, Spectrum) {
  const SpectralObservable f = observable_F();
  ASSERT_EQ(f.branches().size(), 3u);
  EXPECT_EQ(f.branches()[0].eigenvalue, 1.0);
  EXPECT_EQ(f.branches()[0].basis.size(), 1u);
  EXPECT_EQ(f.branches()[1].eigenvalue, 0.0);
  EXPECT_EQ(f.branches()[1].basis.size(), 14u);
  EXPECT_EQ(f.branches()[2].eigenvalue, -1.0);
  const auto b = spin_zero_basis();
  EXPECT_NEAR(fidelity(f.branches()[0].basis[0], b.phi1), 1.0, 1e-14);
  EXPECT_NEAR(fidelity(f.branches()[2].basis[0], b.phi0), 1.0, 1e-14);
}

TEST(Embed, MapsSupport) {
  const int sites[] = {5, 6, 7, 8};
  const auto g = embed(observable_G(), sites, 8);
  EXPECT_EQ(g.n_qubits(), 8);
  EXPECT_EQ(std::vector<int>(g.support().begin(), g.support().end()),
            (std::vector<int>{5, 6, 7, 8}));
}

TEST(Embed, PauliMatchesEmbedSingle) {
  const int site[] = {2};
  const auto embedded = embed(pauli(PauliAxis::kX, 1, 1), site, 3);
  EXPECT_LT(max_abs_diff(embedded.matrix(), embed_single(pauli_x(), 2, 3)), 1e-14);
}

TEST(IsFunctionOf, ProductOfGenerators) {
  const auto target = SpectralObservable::from_matrix(kron(pauli_z(), pauli_z()));
  const SpectralObservable gens[] = {pauli(PauliAxis::kZ, 1, 2), pauli(PauliAxis::kZ, 2, 2)};
  const FunctionReport r = is_function_of(target, gens);
  ASSERT_TRUE(r.is_function);
  ASSERT_TRUE(r.value_table.has_value());
  ASSERT_EQ(r.value_table->size(), 4u);
  for (const auto& [joint, value] : *r.value_table) EXPECT_EQ(value, joint[0] * joint[1]);
  EXPECT_FALSE(r.witness.has_value());
}

TEST(IsFunctionOf, GeneratorIsFunctionOfItself) {
  const SpectralObservable gens[] = {pauli(PauliAxis::kX, 1, 1)};
  EXPECT_TRUE(is_function_of(gens[0], gens).is_function);
}

TEST(IsFunctionOf, FIsNotAFunctionOfLocalGenerators) {
  const SpectralObservable gens[] = {pauli(PauliAxis::kZ, 1, 4), pauli(PauliAxis::kZ, 2, 4),
                                     pauli(PauliAxis::kX, 3, 4), pauli(PauliAxis::kX, 4, 4)};
  const FunctionReport r = is_function_of(observable_F(), gens);
  EXPECT_FALSE(r.is_function);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->joint_outcome, (OutcomeTuple{1, 1, 1, 1}));
  EXPECT_EQ(r.witness->eigenspace_dim, 1u);
}

TEST(IsFunctionOf, RejectsNonCommutingGenerators) {
  const SpectralObservable gens[] = {pauli(PauliAxis::kX, 1, 1), pauli(PauliAxis::kZ, 1, 1)};
  try {
    is_function_of(pauli(PauliAxis::kX, 1, 1), gens);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNonCommuting);
  }
}

TEST(Invariance, HadamardLikeRotationMovesPauliZ) {
  const double h = 1 / std::sqrt(2.0);
  const MatrixOperator had{{h, h}, {h, -h}};
  const auto r = check_invariance(pauli(PauliAxis::kZ, 1, 1), RotationPattern::equal_on_all(had));
  EXPECT_FALSE(r.invariant);
  // H Z H = X, so ||X - Z||_max = 1.
  EXPECT_NEAR(r.max_deviation, 1.0, 1e-12);
}

TEST(Invariance, PiRotationFlipsSign) {
  // X Z X = -Z: deviation 2 on the diagonal.
  const auto r = check_invariance(pauli(PauliAxis::kZ, 1, 1),
                                  RotationPattern::equal_on_all(pauli_x()));
  EXPECT_NEAR(r.max_deviation, 2.0, 1e-12);
}

TEST(Invariance, RejectsNonUnitary) {
  try {
    check_invariance(pauli(PauliAxis::kZ, 1, 1),
                     RotationPattern::equal_on_all(MatrixOperator{{2, 0}, {0, 1}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotUnitary);
  }
}

TEST(Invariance, FAndGUnderEqualRotations) {
  const auto eq = random_patterns(RotationPattern::Kind::kEqualOnAll, 4, 20, 99);
  EXPECT_TRUE(check_invariance(observable_F(), eq).invariant);
  EXPECT_TRUE(check_invariance(observable_G(), eq).invariant);
  const auto ps = random_patterns(RotationPattern::Kind::kPerSite, 4, 20, 99);
  EXPECT_FALSE(check_invariance(observable_F(), ps).invariant);
}

TEST(RandomSu2, UnitaryWithUnitDeterminant) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const MatrixOperator u = random_su2(seed);
    EXPECT_TRUE(u.is_unitary(1e-12));
    const Complex det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
    EXPECT_LT(std::abs(det - Complex(1.0)), 1e-12);
  }
}

TEST(RandomSu2, HaarMeanOfTopLeftEntry) {
  // For Haar-random SU(2), |u00|^2 is uniform on [0, 1].
  double sum = 0.0;
  const int n = 100000;
  for (int k = 0; k < n; ++k) sum += std::norm(random_su2(derive_seed(17, k))(0, 0));
  EXPECT_NEAR(sum / n, 0.5, 0.01);
}

TEST(RandomPatterns, Deterministic) {
  const auto a = random_patterns(RotationPattern::Kind::kPerSite, 3, 5, 7);
  const auto b = random_patterns(RotationPattern::Kind::kPerSite, 3, 5, 7);
  ASSERT_EQ(a.size(), 5u);
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(max_abs_diff(a[k].full(3), b[k].full(3)), 0.0);
  }
}

}  // namespace
}  // namespace qcollapse
