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

// Born rule, Lüders collapse, sequential programs, joint distributions of
// commuting sets, seeded sampling and correlation analysis.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qcollapse/config.hpp"
#include "qcollapse/observables.hpp"
#include "qcollapse/qcore.hpp"

namespace qcollapse {

/// Outcome label -> probability. Single-observable distributions use
/// one-element labels. Zero-probability outcomes are kept.
struct Distribution {
  std::vector<std::pair<OutcomeTuple, double>> entries;

  /// Probability of `label` (0 when absent). Labels match within `tol`.
  double probability(const OutcomeTuple& label, double tol = 1e-9) const;
  double probability(double eigenvalue, double tol = 1e-9) const {
    return probability(OutcomeTuple{eigenvalue}, tol);
  }
  double total() const;
};

struct MeasurementRecord {
  std::string observable_id;
  double outcome = 0.0;
  double probability = 0.0;
  StateVector post_state;
};

struct CorrelationReport {
  Distribution joint;  // labels are (a, b)
  bool perfectly_correlated = false;
  /// Over a-outcomes with nonzero probability: the largest / smallest value of
  /// max_b P(b | a).
  double max_conditional_certainty = 0.0;
  double min_conditional_certainty = 0.0;
};

/// Throws kDimensionMismatch or kNotNormalized.
Distribution born_distribution(const StateVector& state,
                               const SpectralObservable& obs,
                               const Config& config = {});

/// Lüders rule: post = P|s> / ‖P|s>‖. Throws kOutcomeNotInSpectrum, or
/// kZeroProbability when ‖P|s>‖² <= config.zero.
MeasurementRecord collapse(const StateVector& state, const SpectralObservable& obs,
                           double outcome, const Config& config = {},
                           std::string observable_id = {});

/// Left fold of `collapse`. Failures are rethrown as SequenceError carrying
/// the step index. `ids`, when non-empty, names each step's observable.
std::vector<MeasurementRecord> run_sequence(
    const StateVector& state, std::span<const SpectralObservable> program,
    std::span<const double> outcomes, const Config& config = {},
    std::span<const std::string> ids = {});

/// Product of the per-step conditional probabilities.
double joint_probability(std::span<const MeasurementRecord> records);

/// Distribution over outcome tuples of a pairwise-commuting set (throws
/// kNonCommuting otherwise). Every tuple is listed, in branch order.
Distribution joint_distribution(const StateVector& state,
                                std::span<const SpectralObservable> set,
                                const Config& config = {});

/// Exact distribution of the outcome strings of a sequential program
/// (commuting or not); impossible prefixes are pruned.
Distribution sequence_distribution(const StateVector& state,
                                   std::span<const SpectralObservable> program,
                                   const Config& config = {});

struct FrequencyTable {
  std::uint64_t trials = 0;
  std::vector<std::pair<OutcomeTuple, std::uint64_t>> counts;

  std::uint64_t count(const OutcomeTuple& label, double tol = 1e-9) const;
  /// Adds `other` entry-wise; both must come from the same program.
  void merge(const FrequencyTable& other);
};

/// Trials at or below this size share one RNG stream; larger runs are split
/// into chunks with derived seeds whose tables merge by addition.
inline constexpr std::uint64_t kSampleChunk = 65536;

/// Monte Carlo run of `program` on `state`; deterministic for a fixed seed.
FrequencyTable sample(const StateVector& state,
                      std::span<const SpectralObservable> program,
                      std::uint64_t trials, std::uint64_t seed,
                      const Config& config = {});
/// Samples chunk `chunk` of a run; `sample` is the sum over chunks.
FrequencyTable sample_chunk(const Distribution& exact, std::uint64_t trials,
                            std::uint64_t seed, std::uint64_t chunk);

/// Throws kOverlappingSupports when a and b share a site.
CorrelationReport correlation_check(const StateVector& state,
                                    const SpectralObservable& a,
                                    const SpectralObservable& b,
                                    const Config& config = {});

}  // namespace qcollapse
