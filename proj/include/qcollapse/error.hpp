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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qcollapse {

enum class ErrorKind {
  kCapacity,
  kDimensionMismatch,
  kNotFinite,
  kNotHermitian,
  kNotUnitary,
  kNotNormalized,
  kNotConverged,
  kInvalidArgument,
  kOutcomeNotInSpectrum,
  kZeroProbability,
  kNonCommuting,
  kOverlappingSupports,
  kParse,
  kSemantic,
};

const char* to_string(ErrorKind kind);

/// Base exception for all library errors. `kind()` is the stable,
/// machine-checkable part; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by `run_sequence` when step `step()` (0-based) fails; `kind()` is
/// the kind of the underlying failure.
class SequenceError : public Error {
 public:
  SequenceError(ErrorKind kind, std::size_t step, const std::string& message)
      : Error(kind, "step " + std::to_string(step + 1) + ": " + message),
        step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Lexical, syntactic or semantic error in a scenario file. Line and column
/// are 1-based.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, int line, int column, const std::string& message)
      : Error(kind, std::to_string(line) + ":" + std::to_string(column) +
                        ": " + message),
        line_(line),
        column_(column),
        detail_(message) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  int line_;
  int column_;
  std::string detail_;
};

}  // namespace qcollapse
