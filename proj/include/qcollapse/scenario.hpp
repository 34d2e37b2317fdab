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

// Line-oriented scenario language (.qsc).
//
//   # comment
//   qubits 8
//   state et = 1/2 (|00++> * (psi0 + 1*sqrt(3) psi1))
//   obs f = embed(F; 1,2,3,4; 8)
//   obs sz1 = sigma z 1
//   measure sz1 outcomes +
//   assert_prob f + = 1/12
//   report f
//
// Kets use 0/1 for z-basis and +/- for x-basis qubits. `measure`,
// `assert_prob` and `report <obs>` act on the current state: the most
// recently bound `state`, replaced by its post-measurement state after each
// `measure`. Bindings are evaluated while parsing, so name resolution,
// dimensions and normalisation are checked before anything runs.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcollapse/config.hpp"
#include "qcollapse/measurement.hpp"
#include "qcollapse/observables.hpp"
#include "qcollapse/qcore.hpp"

namespace qcollapse::scenario {

struct SourcePos {
  int line = 1;
  int column = 1;
};

/// Product of numbers, sqrt(x) and i, combined with * and /.
struct Coefficient {
  struct Factor {
    enum class Kind { kNumber, kSqrt, kImaginary };
    Kind kind = Kind::kNumber;
    double value = 1.0;
    bool divide = false;  // applied with '/' instead of '*'
  };
  bool negate = false;
  std::vector<Factor> factors;

  Complex value() const;
};

struct StateExpr;
using StateExprPtr = std::shared_ptr<const StateExpr>;

struct StateExpr {
  enum class Kind {
    kKet,        // text = symbols between | and >
    kName,       // text = binding name
    kBuiltin,    // text = phi0 | phi1 | psi0 | psi1 | eta_tilde
    kSinglet,    // pairs
    kTensor,     // lhs * rhs
    kSum,        // lhs + rhs
    kDifference, // lhs - rhs
    kScaled,     // coeff lhs
    kNormalize,  // normalize(lhs)
  };
  Kind kind = Kind::kKet;
  SourcePos pos;
  std::string text;
  std::vector<std::pair<int, int>> pairs;
  Coefficient coeff;
  StateExprPtr lhs, rhs;
};

struct ObsExpr;
using ObsExprPtr = std::shared_ptr<const ObsExpr>;

struct ObsExpr {
  enum class Kind { kPauli, kF, kG, kEmbed, kName };
  Kind kind = Kind::kF;
  SourcePos pos;
  PauliAxis axis = PauliAxis::kZ;
  int site = 0;
  std::string name;
  ObsExprPtr inner;
  std::vector<int> sites;
  int n_qubits = 0;
};

struct Rational {
  double numerator = 0.0;
  std::optional<double> denominator;
  double value() const { return denominator ? numerator / *denominator : numerator; }
};

struct Statement {
  enum class Kind { kQubits, kState, kObs, kMeasure, kAssertProb, kReport };
  Kind kind = Kind::kQubits;
  SourcePos pos;
  int qubits = 0;
  std::string name;               // kState, kObs, kAssertProb, kReport
  StateExprPtr state;             // kState
  ObsExprPtr obs;                 // kObs
  std::vector<std::string> names; // kMeasure
  std::vector<double> outcomes;   // kMeasure, kAssertProb (one entry)
  Rational expected;              // kAssertProb
};

struct Scenario {
  std::optional<int> n_qubits;
  std::vector<Statement> statements;
  /// Evaluated bindings in declaration order.
  std::vector<std::pair<std::string, StateVector>> states;
  std::vector<std::pair<std::string, SpectralObservable>> observables;

  const StateVector* find_state(std::string_view name) const;
  const SpectralObservable* find_observable(std::string_view name) const;
};

/// Parses and evaluates a scenario. Throws ParseError (kind kParse for
/// lexical/syntactic problems, kSemantic for unknown names, dimension
/// mismatches or non-unit states) carrying the 1-based line and column.
Scenario parse_scenario(std::string_view text, const Config& config = {});

/// Canonical text form; parsing it yields an equivalent scenario.
std::string print_scenario(const Scenario& scenario);
std::string print_state_expr(const StateExpr& expr);
std::string print_obs_expr(const ObsExpr& expr);

/// One executed statement.
struct Event {
  enum class Kind { kMeasure, kAssert, kReportObservable, kReportState };
  Kind kind = Kind::kMeasure;
  int line = 0;
  // kMeasure
  std::vector<std::string> names;
  std::vector<double> outcomes;
  std::vector<MeasurementRecord> records;
  double joint_probability = 0.0;
  std::optional<StateVector> pre_state;
  // kAssert / kReportObservable
  std::string name;
  double outcome = 0.0;
  double expected = 0.0;
  double computed = 0.0;
  bool passed = true;
  Distribution distribution;
  // kReportState
  std::optional<StateVector> state;
};

struct RunResult {
  std::vector<Event> events;
  bool assertions_passed = true;
  /// Set when execution stopped on a runtime error (e.g. an impossible
  /// measurement outcome); events up to that point are kept.
  std::optional<std::string> runtime_error;
  int runtime_error_line = 0;
};

RunResult run_scenario(const Scenario& scenario, const Config& config = {});

}  // namespace qcollapse::scenario
