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

// The local-measurement value-assignment protocol for the collective
// observable F, and the checks that audit it.
//
// The protocol measures σ_z1, σ_z2, σ_x3, σ_x4 on Alice's qubits, looks up
// whether the resulting product ket overlaps phi0 or phi1, and assigns F the
// value -1 or +1 accordingly. `run_claimed_protocol` compares that
// assignment with the Born distribution of F on the collapsed state.
//
// phi0/phi1 are the singlet-pairing basis of the four-qubit spin-zero
// subspace. Any other orthonormal basis of that subspace is a rotation of
// this one and changes the per-outcome overlaps, so the overlap table is
// always reported alongside the assignments.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qcollapse/config.hpp"
#include "qcollapse/measurement.hpp"
#include "qcollapse/observables.hpp"
#include "qcollapse/states.hpp"

namespace qcollapse {

enum class ClaimedValue { kPlusOne, kMinusOne, kAmbiguous, kUndefined };
enum class Verdict { kConfirmed, kRefuted };

const char* to_string(ClaimedValue v);
const char* to_string(Verdict v);

/// Outcome signs, +1 or -1 per measured qubit.
using SignTuple = std::vector<int>;

/// Product ket for outcomes of (σ_z1, σ_z2, σ_x3, σ_x4): +1 on a z qubit is
/// |0>, on an x qubit (|0>+|1>)/√2.
StateVector outcome_ket(std::span<const int> signs);

struct OverlapRow {
  SignTuple signs;
  Complex overlap_minus;  // <ket|phi0>
  Complex overlap_plus;   // <ket|phi1>
  ClaimedValue value = ClaimedValue::kUndefined;
};

/// +1 if the outcome ket overlaps only phi1, -1 if only phi0, ambiguous if
/// both, undefined if neither (overlaps compared against config.zero).
/// Throws kInvalidArgument unless given four ±1 signs.
ClaimedValue assign_claimed_value(std::span<const int> outcome,
                                  const Config& config = {});
/// Same rule against an arbitrary pair (minus, plus) of four-qubit states.
ClaimedValue assign_claimed_value(std::span<const int> outcome,
                                  const StateVector& minus, const StateVector& plus,
                                  const Config& config = {});

/// All 16 outcome strings in lexicographic (+ before -) order.
std::vector<SignTuple> all_outcome_strings();
std::vector<OverlapRow> assignment_table(const Config& config = {});

/// A measurement program, the observable whose value it claims to fix, and
/// the rule mapping outcome signs to the claimed value.
struct Protocol {
  std::vector<SpectralObservable> program;
  std::vector<std::string> program_ids;
  SpectralObservable target;
  std::string target_id;
  std::function<ClaimedValue(std::span<const int>)> claim;
};

/// σ_z1, σ_z2, σ_x3, σ_x4 on an eight-qubit register, target F on sites 1-4,
/// claim rule `assign_claimed_value`.
Protocol claimed_local_protocol(const Config& config = {});

struct ProtocolReport {
  SignTuple outcome_string;
  ClaimedValue claimed_value = ClaimedValue::kUndefined;
  /// Born distribution of the target on the post-measurement state.
  Distribution quantum_distribution;
  Verdict verdict = Verdict::kRefuted;
  /// P(target = claimed value); 0 when no ±1 value is claimed.
  double certainty = 0.0;
  /// Probability of the outcome string itself.
  double outcome_probability = 0.0;
  std::vector<MeasurementRecord> records;
};

/// Post-selects `outcome` through the program and checks the claimed value
/// against the quantum prediction. Throws SequenceError (kZeroProbability)
/// for an impossible outcome string.
ProtocolReport run_protocol(const Protocol& protocol, const StateVector& state,
                            std::span<const int> outcome, const Config& config = {});
ProtocolReport run_claimed_protocol(const StateVector& state,
                                    std::span<const int> outcome,
                                    const Config& config = {});

struct EtaCheck {
  bool matches = false;
  double fidelity = 0.0;
  double residual = 1.0;  // 1 - fidelity
};

/// Collapses `candidate` with all-+1 local outcomes and compares the result
/// with eta_tilde up to global phase.
EtaCheck check_eta_candidate(const StateVector& candidate, const Config& config = {});

/// is_function_of(f, {σ_z1, σ_z2, σ_x3, σ_x4}) on four qubits; `f` defaults
/// to F.
FunctionReport dirac_audit(const Config& config = {});
FunctionReport dirac_audit(const SpectralObservable& f, const Config& config = {});

/// The four local generators on an n-qubit register (n >= 4).
std::vector<SpectralObservable> local_generators(int n_qubits);

}  // namespace qcollapse
