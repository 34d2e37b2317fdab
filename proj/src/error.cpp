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

#include "qcollapse/error.hpp"

namespace qcollapse {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kCapacity: return "capacity";
    case ErrorKind::kDimensionMismatch: return "dimension_mismatch";
    case ErrorKind::kNotFinite: return "not_finite";
    case ErrorKind::kNotHermitian: return "not_hermitian";
    case ErrorKind::kNotUnitary: return "not_unitary";
    case ErrorKind::kNotNormalized: return "not_normalized";
    case ErrorKind::kNotConverged: return "not_converged";
    case ErrorKind::kInvalidArgument: return "invalid_argument";
    case ErrorKind::kOutcomeNotInSpectrum: return "outcome_not_in_spectrum";
    case ErrorKind::kZeroProbability: return "zero_probability";
    case ErrorKind::kNonCommuting: return "non_commuting";
    case ErrorKind::kOverlappingSupports: return "overlapping_supports";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kSemantic: return "semantic";
  }
  return "unknown";
}

}  // namespace qcollapse
