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

#include <gtest/gtest.h>

#include "qcollapse/error.hpp"
#include "qcollapse/protocol.hpp"

namespace qcollapse {
namespace {

TEST(OutcomeKet, AllUp) {
  const int up[] = {1, 1, 1, 1};
  const StateVector k = outcome_ket(up);
  // |0 0 +x +x>: equal weight on 0000, 0001, 0010, 0011.
  for (std::size_t idx = 0; idx < 4; ++idx) EXPECT_NEAR(k[idx].real(), 0.5, 1e-15);
}

TEST(OutcomeKet, RejectsBadSigns) {
  const int bad[] = {1, 0, 1, 1};
  EXPECT_THROW(outcome_ket(bad), Error);
  const int short_string[] = {1, 1};
  EXPECT_THROW(outcome_ket(short_string), Error);
}

TEST(Assignment, AllUpIsPlusOne) {
  const int up[] = {1, 1, 1, 1};
  EXPECT_EQ(assign_claimed_value(up), ClaimedValue::kPlusOne);
}

TEST(Assignment, AlternatingStringIsMinusOne) {
  // <0 1 +x -x| phi0> = -1/2 and <...|phi1> = 0, so the rule gives -1.
  const int s[] = {1, -1, 1, -1};
  EXPECT_EQ(assign_claimed_value(s), ClaimedValue::kMinusOne);
}

TEST(Assignment, FullTable) {
  const auto rows = assignment_table();
  ASSERT_EQ(rows.size(), 16u);
  int plus = 0, minus = 0;
  for (const auto& r : rows) {
    if (r.value == ClaimedValue::kPlusOne) {
      ++plus;
      EXPECT_NEAR(std::abs(r.overlap_plus), 1 / (2 * std::sqrt(3.0)), 1e-14);
    }
    if (r.value == ClaimedValue::kMinusOne) {
      ++minus;
      EXPECT_NEAR(std::abs(r.overlap_minus), 0.5, 1e-14);
    }
  }
  EXPECT_EQ(plus, 12);
  EXPECT_EQ(minus, 4);
}

TEST(Assignment, AmbiguousAndUndefinedWithOtherBasis) {
  const auto b = spin_zero_basis();
  const int up[] = {1, 1, 1, 1};
  const int alt[] = {1, -1, 1, -1};
  // Mixing phi0 into the +1 state makes alternating strings overlap both.
  const StateVector mixed = (b.phi0 + b.phi1) * (1 / std::sqrt(2.0));
  EXPECT_EQ(assign_claimed_value(alt, b.phi0, mixed), ClaimedValue::kAmbiguous);
  // |1111> is orthogonal to every all-up outcome ket.
  EXPECT_EQ(assign_claimed_value(up, StateVector::basis(4, 15), StateVector::basis(4, 15)),
            ClaimedValue::kUndefined);
}

TEST(AllOutcomeStrings, Order) {
  const auto all = all_outcome_strings();
  ASSERT_EQ(all.size(), 16u);
  EXPECT_EQ(all.front(), (SignTuple{1, 1, 1, 1}));
  EXPECT_EQ(all[1], (SignTuple{1, 1, 1, -1}));
  EXPECT_EQ(all.back(), (SignTuple{-1, -1, -1, -1}));
}

TEST(ClaimedProtocol, RefutedOnEtaTilde) {
  const int up[] = {1, 1, 1, 1};
  const ProtocolReport r = run_claimed_protocol(eta_tilde(), up);
  EXPECT_EQ(r.claimed_value, ClaimedValue::kPlusOne);
  EXPECT_EQ(r.verdict, Verdict::kRefuted);
  EXPECT_NEAR(r.certainty, 1.0 / 12.0, 1e-12);
  EXPECT_NEAR(r.outcome_probability, 1.0, 1e-12);
  EXPECT_EQ(r.records.size(), 4u);
}

TEST(ClaimedProtocol, ImpossibleOutcomeString) {
  const int s[] = {-1, 1, 1, 1};
  try {
    run_claimed_protocol(eta_tilde(), s);
    FAIL();
  } catch (const SequenceError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kZeroProbability);
    EXPECT_EQ(e.step(), 0u);
  }
}

TEST(ClaimedProtocol, RejectsWrongRegister) {
  const int up[] = {1, 1, 1, 1};
  EXPECT_THROW(run_claimed_protocol(StateVector::basis(4, 0), up), Error);
}

TEST(GenericProtocol, CertainValueIsConfirmed) {
  // sigma_z1 sigma_z2 is fixed by measuring sigma_z1 and sigma_z2.
  Protocol p{{pauli(PauliAxis::kZ, 1, 2), pauli(PauliAxis::kZ, 2, 2)},
             {"z1", "z2"},
             SpectralObservable::from_matrix(kron(pauli_z(), pauli_z())),
             "z1z2",
             [](std::span<const int> s) {
               return s[0] * s[1] > 0 ? ClaimedValue::kPlusOne : ClaimedValue::kMinusOne;
             }};
  const int outcome[] = {1, -1};
  const ProtocolReport r = run_protocol(p, singlet(1), outcome);
  EXPECT_EQ(r.claimed_value, ClaimedValue::kMinusOne);
  EXPECT_EQ(r.verdict, Verdict::kConfirmed);
  EXPECT_NEAR(r.certainty, 1.0, 1e-12);
}

TEST(EtaCandidate, EtaTildeMatches) {
  const EtaCheck c = check_eta_candidate(eta_tilde());
  EXPECT_TRUE(c.matches);
  EXPECT_NEAR(c.fidelity, 1.0, 1e-12);
}

TEST(EtaCandidate, SymmetricCombinationDoesNotMatch) {
  const auto b = spin_zero_basis();
  // psi = phi on sites 5-8.
  const StateVector cand =
      (tensor(b.phi0, b.phi0) + tensor(b.phi1, b.phi1)) * (1 / std::sqrt(2.0));
  EXPECT_FALSE(check_eta_candidate(cand).matches);
}

TEST(EtaCandidate, AliceBobSingletsGiveFidelityOneSixteenth) {
  // Singlets on (1,5), (2,6), (3,7), (4,8).
  const std::pair<int, int> pairs[] = {{1, 5}, {2, 6}, {3, 7}, {4, 8}};
  const EtaCheck c = check_eta_candidate(singlet_pairs(pairs, 8));
  EXPECT_FALSE(c.matches);
  EXPECT_NEAR(c.fidelity, 1.0 / 16.0, 1e-12);
}

TEST(DiracAudit, DefaultIsF) {
  const FunctionReport r = dirac_audit();
  EXPECT_FALSE(r.is_function);
  EXPECT_TRUE(dirac_audit(pauli(PauliAxis::kZ, 1, 4)).is_function);
}

}  // namespace
}  // namespace qcollapse
