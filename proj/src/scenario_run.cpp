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

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "qcollapse/error.hpp"
#include "qcollapse/scenario.hpp"

namespace qcollapse::scenario {
namespace {

std::string print_coefficient(const Coefficient& c) {
  std::string out = c.negate ? "-" : "";
  for (std::size_t k = 0; k < c.factors.size(); ++k) {
    const auto& f = c.factors[k];
    if (k > 0) out += f.divide ? "/" : "*";
    switch (f.kind) {
      case Coefficient::Factor::Kind::kNumber: out += fmt::format("{}", f.value); break;
      case Coefficient::Factor::Kind::kSqrt: out += fmt::format("sqrt({})", f.value); break;
      case Coefficient::Factor::Kind::kImaginary: out += "i"; break;
    }
  }
  return out;
}

char sign_char(double outcome) {
  if (outcome > 0.5) return '+';
  if (outcome < -0.5) return '-';
  return '0';
}

std::string axis_name(PauliAxis a) {
  switch (a) {
    case PauliAxis::kX: return "x";
    case PauliAxis::kY: return "y";
    case PauliAxis::kZ: return "z";
  }
  return "?";
}

}  // namespace

std::string print_state_expr(const StateExpr& e) {
  switch (e.kind) {
    case StateExpr::Kind::kKet: return "|" + e.text + ">";
    case StateExpr::Kind::kName:
    case StateExpr::Kind::kBuiltin: return e.text;
    case StateExpr::Kind::kSinglet: {
      std::string out = "singlet(";
      for (std::size_t k = 0; k < e.pairs.size(); ++k) {
        if (k > 0) out += "; ";
        out += fmt::format("{},{}", e.pairs[k].first, e.pairs[k].second);
      }
      return out + ")";
    }
    case StateExpr::Kind::kTensor:
      return "(" + print_state_expr(*e.lhs) + " * " + print_state_expr(*e.rhs) + ")";
    case StateExpr::Kind::kSum:
      return "(" + print_state_expr(*e.lhs) + " + " + print_state_expr(*e.rhs) + ")";
    case StateExpr::Kind::kDifference:
      return "(" + print_state_expr(*e.lhs) + " - " + print_state_expr(*e.rhs) + ")";
    case StateExpr::Kind::kScaled:
      return "(" + print_coefficient(e.coeff) + " " + print_state_expr(*e.lhs) + ")";
    case StateExpr::Kind::kNormalize:
      return "normalize(" + print_state_expr(*e.lhs) + ")";
  }
  return {};
}

std::string print_obs_expr(const ObsExpr& e) {
  switch (e.kind) {
    case ObsExpr::Kind::kPauli: return fmt::format("sigma {} {}", axis_name(e.axis), e.site);
    case ObsExpr::Kind::kF: return "F";
    case ObsExpr::Kind::kG: return "G";
    case ObsExpr::Kind::kEmbed:
      return fmt::format("embed({}; {}; {})", print_obs_expr(*e.inner),
                         fmt::join(e.sites, ","), e.n_qubits);
    case ObsExpr::Kind::kName: return e.name;
  }
  return {};
}

std::string print_scenario(const Scenario& sc) {
  std::string out;
  for (const Statement& st : sc.statements) {
    switch (st.kind) {
      case Statement::Kind::kQubits:
        out += fmt::format("qubits {}\n", st.qubits);
        break;
      case Statement::Kind::kState:
        out += fmt::format("state {} = {}\n", st.name, print_state_expr(*st.state));
        break;
      case Statement::Kind::kObs:
        out += fmt::format("obs {} = {}\n", st.name, print_obs_expr(*st.obs));
        break;
      case Statement::Kind::kMeasure: {
        std::string signs;
        for (double o : st.outcomes) signs.push_back(sign_char(o));
        out += fmt::format("measure {} outcomes {}\n", fmt::join(st.names, ", "), signs);
        break;
      }
      case Statement::Kind::kAssertProb: {
        std::string value = fmt::format("{}", st.expected.numerator);
        if (st.expected.denominator) value += fmt::format("/{}", *st.expected.denominator);
        out += fmt::format("assert_prob {} {} = {}\n", st.name,
                           sign_char(st.outcomes.front()), value);
        break;
      }
      case Statement::Kind::kReport:
        out += fmt::format("report {}\n", st.name);
        break;
    }
  }
  return out;
}

RunResult run_scenario(const Scenario& sc, const Config& config) {
  RunResult result;
  std::optional<StateVector> current;
  for (const Statement& st : sc.statements) {
    try {
      switch (st.kind) {
        case Statement::Kind::kQubits:
        case Statement::Kind::kObs:
          break;
        case Statement::Kind::kState:
          current = *sc.find_state(st.name);
          break;
        case Statement::Kind::kMeasure: {
          std::vector<SpectralObservable> program;
          for (const auto& n : st.names) program.push_back(*sc.find_observable(n));
          Event ev;
          ev.kind = Event::Kind::kMeasure;
          ev.line = st.pos.line;
          ev.names = st.names;
          ev.outcomes = st.outcomes;
          ev.pre_state = *current;
          ev.records = run_sequence(*current, program, st.outcomes, config, st.names);
          ev.joint_probability = joint_probability(ev.records);
          current = ev.records.back().post_state;
          result.events.push_back(std::move(ev));
          break;
        }
        case Statement::Kind::kAssertProb: {
          Event ev;
          ev.kind = Event::Kind::kAssert;
          ev.line = st.pos.line;
          ev.name = st.name;
          ev.outcome = st.outcomes.front();
          ev.expected = st.expected.value();
          ev.distribution = born_distribution(*current, *sc.find_observable(st.name), config);
          ev.computed = ev.distribution.probability(ev.outcome, config.cluster);
          ev.passed = std::abs(ev.computed - ev.expected) <= config.assert_prob;
          result.assertions_passed = result.assertions_passed && ev.passed;
          result.events.push_back(std::move(ev));
          break;
        }
        case Statement::Kind::kReport: {
          Event ev;
          ev.line = st.pos.line;
          ev.name = st.name;
          if (const SpectralObservable* obs = sc.find_observable(st.name)) {
            ev.kind = Event::Kind::kReportObservable;
            ev.distribution = born_distribution(*current, *obs, config);
          } else {
            ev.kind = Event::Kind::kReportState;
            ev.state = *sc.find_state(st.name);
          }
          result.events.push_back(std::move(ev));
          break;
        }
      }
    } catch (const Error& e) {
      result.runtime_error = e.what();
      result.runtime_error_line = st.pos.line;
      return result;
    }
  }
  return result;
}

}  // namespace qcollapse::scenario
