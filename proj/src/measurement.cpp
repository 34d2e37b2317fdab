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

#include "qcollapse/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "qcollapse/error.hpp"

namespace qcollapse {
namespace {

bool same_label(const OutcomeTuple& a, const OutcomeTuple& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > tol) return false;
  }
  return true;
}

double squared_norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return s;
}

void check_state(const StateVector& state, const SpectralObservable& obs,
                 const Config& config) {
  if (state.dim() != obs.dim()) {
    throw Error(ErrorKind::kDimensionMismatch,
                fmt::format("{}-qubit state measured with a {}-qubit observable",
                            state.n_qubits(), obs.n_qubits()));
  }
  if (!state.is_normalized(config.norm)) {
    throw Error(ErrorKind::kNotNormalized,
                fmt::format("state has squared norm {:.15g}", state.squared_norm()));
  }
}

// Depth-first walk over the outcome tree of a sequential program. `v` is the
// unnormalised branch vector, so ‖v‖² is the joint probability of the prefix.
void walk(std::span<const SpectralObservable> program, std::size_t step,
          const CVector& v, OutcomeTuple& prefix, bool keep_impossible,
          const Config& config, Distribution& out) {
  if (step == program.size()) {
    out.entries.emplace_back(prefix, squared_norm(v));
    return;
  }
  const SpectralObservable& obs = program[step];
  for (std::size_t b = 0; b < obs.branches().size(); ++b) {
    prefix.push_back(obs.branches()[b].eigenvalue);
    CVector w = obs.project(b, v);
    if (squared_norm(w) > config.zero) {
      walk(program, step + 1, w, prefix, keep_impossible, config, out);
    } else if (keep_impossible) {
      std::fill(w.begin(), w.end(), Complex{});
      walk(program, step + 1, w, prefix, keep_impossible, config, out);
    }
    prefix.pop_back();
  }
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

double Distribution::probability(const OutcomeTuple& label, double tol) const {
  for (const auto& [l, p] : entries) {
    if (same_label(l, label, tol)) return p;
  }
  return 0.0;
}

double Distribution::total() const {
  double s = 0.0;
  for (const auto& e : entries) s += e.second;
  return s;
}

Distribution born_distribution(const StateVector& state,
                               const SpectralObservable& obs,
                               const Config& config) {
  check_state(state, obs, config);
  Distribution d;
  for (std::size_t b = 0; b < obs.branches().size(); ++b) {
    d.entries.emplace_back(OutcomeTuple{obs.branches()[b].eigenvalue},
                           squared_norm(obs.project(b, state.amplitudes())));
  }
  return d;
}

MeasurementRecord collapse(const StateVector& state, const SpectralObservable& obs,
                           double outcome, const Config& config,
                           std::string observable_id) {
  check_state(state, obs, config);
  const auto branch = obs.find_branch(outcome, config.cluster);
  if (!branch) {
    throw Error(ErrorKind::kOutcomeNotInSpectrum,
                fmt::format("{:g} is not an eigenvalue of {}", outcome,
                            observable_id.empty() ? "the observable" : observable_id));
  }
  CVector projected = obs.project(*branch, state.amplitudes());
  const double p = squared_norm(projected);
  if (p <= config.zero) {
    throw Error(ErrorKind::kZeroProbability,
                fmt::format("outcome {:g} of {} has probability {:.3e}: impossible "
                            "branch",
                            outcome,
                            observable_id.empty() ? "the observable" : observable_id,
                            p));
  }
  const double scale = 1.0 / std::sqrt(p);
  for (auto& z : projected) z *= scale;
  return MeasurementRecord{std::move(observable_id), obs.branches()[*branch].eigenvalue,
                           p, StateVector(state.n_qubits(), std::move(projected))};
}

std::vector<MeasurementRecord> run_sequence(
    const StateVector& state, std::span<const SpectralObservable> program,
    std::span<const double> outcomes, const Config& config,
    std::span<const std::string> ids) {
  if (program.size() != outcomes.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("{} observables but {} outcomes", program.size(),
                            outcomes.size()));
  }
  if (!ids.empty() && ids.size() != program.size()) {
    throw Error(ErrorKind::kInvalidArgument, "one id per program step required");
  }
  std::vector<MeasurementRecord> records;
  StateVector current = state;
  for (std::size_t k = 0; k < program.size(); ++k) {
    std::string id = ids.empty() ? fmt::format("step {}", k + 1) : ids[k];
    try {
      records.push_back(collapse(current, program[k], outcomes[k], config, id));
    } catch (const Error& e) {
      throw SequenceError(e.kind(), k, e.what());
    }
    current = records.back().post_state;
  }
  return records;
}

double joint_probability(std::span<const MeasurementRecord> records) {
  double p = 1.0;
  for (const auto& r : records) p *= r.probability;
  return p;
}

Distribution joint_distribution(const StateVector& state,
                                std::span<const SpectralObservable> set,
                                const Config& config) {
  if (set.empty()) throw Error(ErrorKind::kInvalidArgument, "empty observable set");
  for (const auto& obs : set) check_state(state, obs, config);
  std::vector<MatrixOperator> ms;
  for (const auto& obs : set) ms.push_back(obs.matrix());
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      const double c = commutator(ms[i], ms[j]).max_abs();
      if (c > config.recon) {
        throw Error(ErrorKind::kNonCommuting,
                    fmt::format("observables {} and {} do not commute "
                                "(max |[A,B]| = {:.3e})",
                                i + 1, j + 1, c));
      }
    }
  }
  Distribution d;
  OutcomeTuple prefix;
  CVector v(state.amplitudes().begin(), state.amplitudes().end());
  walk(set, 0, v, prefix, /*keep_impossible=*/true, config, d);
  return d;
}

Distribution sequence_distribution(const StateVector& state,
                                   std::span<const SpectralObservable> program,
                                   const Config& config) {
  if (program.empty()) throw Error(ErrorKind::kInvalidArgument, "empty program");
  for (const auto& obs : program) check_state(state, obs, config);
  Distribution d;
  OutcomeTuple prefix;
  CVector v(state.amplitudes().begin(), state.amplitudes().end());
  walk(program, 0, v, prefix, /*keep_impossible=*/false, config, d);
  return d;
}

std::uint64_t FrequencyTable::count(const OutcomeTuple& label, double tol) const {
  for (const auto& [l, c] : counts) {
    if (same_label(l, label, tol)) return c;
  }
  return 0;
}

void FrequencyTable::merge(const FrequencyTable& other) {
  if (counts.empty()) {
    counts = other.counts;
    trials = other.trials;
    return;
  }
  if (counts.size() != other.counts.size()) {
    throw Error(ErrorKind::kInvalidArgument, "merging tables of different programs");
  }
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i].second += other.counts[i].second;
  trials += other.trials;
}

FrequencyTable sample_chunk(const Distribution& exact, std::uint64_t trials,
                            std::uint64_t seed, std::uint64_t chunk) {
  std::vector<double> cumulative;
  double acc = 0.0;
  for (const auto& e : exact.entries) {
    acc += e.second;
    cumulative.push_back(acc);
  }
  FrequencyTable table;
  table.trials = trials;
  for (const auto& e : exact.entries) table.counts.emplace_back(e.first, 0);
  std::mt19937_64 rng(derive_seed(seed, chunk));
  for (std::uint64_t t = 0; t < trials; ++t) {
    const double u = uniform01(rng) * acc;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) --it;
    ++table.counts[static_cast<std::size_t>(it - cumulative.begin())].second;
  }
  return table;
}

FrequencyTable sample(const StateVector& state,
                      std::span<const SpectralObservable> program,
                      std::uint64_t trials, std::uint64_t seed,
                      const Config& config) {
  if (trials < 1) throw Error(ErrorKind::kInvalidArgument, "trials must be >= 1");
  const Distribution exact = sequence_distribution(state, program, config);
  FrequencyTable total;
  std::uint64_t chunk = 0;
  for (std::uint64_t done = 0; done < trials; done += kSampleChunk, ++chunk) {
    total.merge(sample_chunk(exact, std::min(kSampleChunk, trials - done), seed, chunk));
  }
  return total;
}

CorrelationReport correlation_check(const StateVector& state,
                                    const SpectralObservable& a,
                                    const SpectralObservable& b,
                                    const Config& config) {
  for (int s : a.support()) {
    if (std::find(b.support().begin(), b.support().end(), s) != b.support().end()) {
      throw Error(ErrorKind::kOverlappingSupports,
                  fmt::format("observables share site {}", s));
    }
  }
  const SpectralObservable pair[] = {a, b};
  CorrelationReport r;
  r.joint = joint_distribution(state, pair, config);
  r.max_conditional_certainty = 0.0;
  r.min_conditional_certainty = 1.0;
  bool any = false;
  for (const auto& ba : a.branches()) {
    double pa = 0.0, best = 0.0;
    for (const auto& [label, p] : r.joint.entries) {
      if (label[0] == ba.eigenvalue) {
        pa += p;
        best = std::max(best, p);
      }
    }
    if (pa <= config.zero) continue;
    any = true;
    const double certainty = best / pa;
    r.max_conditional_certainty = std::max(r.max_conditional_certainty, certainty);
    r.min_conditional_certainty = std::min(r.min_conditional_certainty, certainty);
  }
  if (!any) r.min_conditional_certainty = 0.0;
  r.perfectly_correlated = any && r.min_conditional_certainty >= 1.0 - config.corr;
  return r;
}

}  // namespace qcollapse
