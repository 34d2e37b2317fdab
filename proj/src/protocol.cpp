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

#include "qcollapse/protocol.hpp"

#include <cmath>

#include <fmt/format.h>

#include "qcollapse/error.hpp"

namespace qcollapse {
namespace {

void check_signs(std::span<const int> outcome) {
  if (outcome.size() != 4) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("expected 4 outcome signs, got {}", outcome.size()));
  }
  for (int s : outcome) {
    if (s != 1 && s != -1) {
      throw Error(ErrorKind::kInvalidArgument,
                  fmt::format("outcome sign must be +1 or -1, got {}", s));
    }
  }
}

ClaimedValue classify(Complex minus, Complex plus, double tol) {
  const bool in_minus = std::abs(minus) > tol;
  const bool in_plus = std::abs(plus) > tol;
  if (in_minus && in_plus) return ClaimedValue::kAmbiguous;
  if (in_plus) return ClaimedValue::kPlusOne;
  if (in_minus) return ClaimedValue::kMinusOne;
  return ClaimedValue::kUndefined;
}

}  // namespace

const char* to_string(ClaimedValue v) {
  switch (v) {
    case ClaimedValue::kPlusOne: return "+1";
    case ClaimedValue::kMinusOne: return "-1";
    case ClaimedValue::kAmbiguous: return "ambiguous";
    case ClaimedValue::kUndefined: return "undefined";
  }
  return "?";
}

const char* to_string(Verdict v) {
  return v == Verdict::kConfirmed ? "confirmed" : "refuted";
}

StateVector outcome_ket(std::span<const int> signs) {
  check_signs(signs);
  const KetAxis axes[] = {KetAxis::kZ, KetAxis::kZ, KetAxis::kX, KetAxis::kX};
  std::vector<AxisBit> spec;
  for (std::size_t k = 0; k < 4; ++k) spec.push_back({axes[k], signs[k] > 0 ? 0 : 1});
  return basis_ket(spec);
}

ClaimedValue assign_claimed_value(std::span<const int> outcome,
                                  const StateVector& minus, const StateVector& plus,
                                  const Config& config) {
  const StateVector ket = outcome_ket(outcome);
  return classify(inner(ket, minus), inner(ket, plus), config.zero);
}

ClaimedValue assign_claimed_value(std::span<const int> outcome, const Config& config) {
  const SpinZeroBasis b = spin_zero_basis();
  return assign_claimed_value(outcome, b.phi0, b.phi1, config);
}

std::vector<SignTuple> all_outcome_strings() {
  std::vector<SignTuple> out;
  for (int mask = 0; mask < 16; ++mask) {
    SignTuple s;
    for (int k = 3; k >= 0; --k) s.push_back(((mask >> k) & 1) ? -1 : 1);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<OverlapRow> assignment_table(const Config& config) {
  const SpinZeroBasis b = spin_zero_basis();
  std::vector<OverlapRow> rows;
  for (auto& signs : all_outcome_strings()) {
    const StateVector ket = outcome_ket(signs);
    OverlapRow row;
    row.overlap_minus = inner(ket, b.phi0);
    row.overlap_plus = inner(ket, b.phi1);
    row.value = classify(row.overlap_minus, row.overlap_plus, config.zero);
    row.signs = std::move(signs);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SpectralObservable> local_generators(int n_qubits) {
  if (n_qubits < 4) {
    throw Error(ErrorKind::kInvalidArgument, "local generators need at least 4 qubits");
  }
  return {pauli(PauliAxis::kZ, 1, n_qubits), pauli(PauliAxis::kZ, 2, n_qubits),
          pauli(PauliAxis::kX, 3, n_qubits), pauli(PauliAxis::kX, 4, n_qubits)};
}

Protocol claimed_local_protocol(const Config& config) {
  const int alice[] = {1, 2, 3, 4};
  Protocol p{local_generators(8),
             {"sigma_z1", "sigma_z2", "sigma_x3", "sigma_x4"},
             embed(observable_F(), alice, 8, config),
             "F",
             [config](std::span<const int> signs) {
               return assign_claimed_value(signs, config);
             }};
  return p;
}

ProtocolReport run_protocol(const Protocol& protocol, const StateVector& state,
                            std::span<const int> outcome, const Config& config) {
  if (outcome.size() != protocol.program.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("{} outcome signs for a {}-step program", outcome.size(),
                            protocol.program.size()));
  }
  ProtocolReport r;
  r.outcome_string.assign(outcome.begin(), outcome.end());
  std::vector<double> outcomes(outcome.begin(), outcome.end());
  r.records = run_sequence(state, protocol.program, outcomes, config, protocol.program_ids);
  r.outcome_probability = joint_probability(r.records);
  r.claimed_value = protocol.claim(outcome);
  r.quantum_distribution =
      born_distribution(r.records.back().post_state, protocol.target, config);
  if (r.claimed_value == ClaimedValue::kPlusOne || r.claimed_value == ClaimedValue::kMinusOne) {
    const double claimed = r.claimed_value == ClaimedValue::kPlusOne ? 1.0 : -1.0;
    r.certainty = r.quantum_distribution.probability(claimed, config.cluster);
    r.verdict = r.certainty < 1.0 - config.corr ? Verdict::kRefuted : Verdict::kConfirmed;
  } else {
    r.certainty = 0.0;
    r.verdict = Verdict::kRefuted;
  }
  return r;
}

ProtocolReport run_claimed_protocol(const StateVector& state,
                                    std::span<const int> outcome, const Config& config) {
  check_signs(outcome);
  if (state.n_qubits() != 8) {
    throw Error(ErrorKind::kDimensionMismatch,
                fmt::format("the local protocol needs an 8-qubit state, got {} qubits",
                            state.n_qubits()));
  }
  return run_protocol(claimed_local_protocol(config), state, outcome, config);
}

EtaCheck check_eta_candidate(const StateVector& candidate, const Config& config) {
  if (candidate.n_qubits() != 8) {
    throw Error(ErrorKind::kDimensionMismatch,
                fmt::format("candidate must have 8 qubits, got {}", candidate.n_qubits()));
  }
  const auto program = local_generators(8);
  const double all_up[] = {1.0, 1.0, 1.0, 1.0};
  const auto records = run_sequence(candidate, program, all_up, config);
  EtaCheck c;
  c.fidelity = fidelity(eta_tilde(), records.back().post_state);
  c.residual = std::max(0.0, 1.0 - c.fidelity);
  c.matches = c.fidelity >= 1.0 - config.norm;
  return c;
}

FunctionReport dirac_audit(const SpectralObservable& f, const Config& config) {
  return is_function_of(f, local_generators(4), config);
}

FunctionReport dirac_audit(const Config& config) {
  return dirac_audit(observable_F(), config);
}

}  // namespace qcollapse
