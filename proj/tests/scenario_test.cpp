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
#include <string>

#include <gtest/gtest.h>

#include "qcollapse/error.hpp"
#include "qcollapse/scenario.hpp"
#include "qcollapse/states.hpp"
#include "test_support.hpp"

namespace qcollapse::scenario {
namespace {

ParseError parse_error(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for:\n" << text;
  return ParseError(ErrorKind::kParse, 0, 0, "none");
}

TEST(Parser, KetAndCoefficients) {
  const Scenario sc = parse_scenario("state a = 1/sqrt(2) |0> + 1/sqrt(2) |1>\n");
  const StateVector* a = sc.find_state("a");
  ASSERT_NE(a, nullptr);
  EXPECT_NEAR((*a)[0].real(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR((*a)[1].real(), 1 / std::sqrt(2.0), 1e-15);
}

TEST(Parser, XBasisKet) {
  const Scenario sc = parse_scenario("state a = |->\n");
  EXPECT_NEAR(sc.find_state("a")->amplitudes()[1].real(), -1 / std::sqrt(2.0), 1e-15);
}

TEST(Parser, ImaginaryCoefficient) {
  const Scenario sc = parse_scenario("state a = normalize(|0> + i |1>)\n");
  EXPECT_NEAR(sc.find_state("a")->amplitudes()[1].imag(), 1 / std::sqrt(2.0), 1e-15);
}

TEST(Parser, DifferenceAndLeadingMinus) {
  const Scenario sc = parse_scenario("state a = normalize(-|01> - |10>)\n");
  const StateVector* a = sc.find_state("a");
  EXPECT_NEAR((*a)[1].real(), -1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR((*a)[2].real(), -1 / std::sqrt(2.0), 1e-15);
}

TEST(Parser, SingletMatchesLibrary) {
  const Scenario sc = parse_scenario("state s = singlet(1,3; 2,4)\n");
  const std::pair<int, int> pairs[] = {{1, 3}, {2, 4}};
  EXPECT_LT(max_abs_diff(*sc.find_state("s"), singlet_pairs(pairs, 4)), 1e-15);
}

TEST(Parser, EtaTildeExpression) {
  const Scenario sc =
      parse_scenario("state et = 1/2 (|00++> * (psi0 + 1*sqrt(3) psi1))\n");
  EXPECT_LT(max_abs_diff(*sc.find_state("et"), eta_tilde()), 1e-14);
}

TEST(Parser, RejectsUnnormalizedState) {
  const ParseError e = parse_error("state a = |0> + |1>\n");
  EXPECT_EQ(e.kind(), ErrorKind::kSemantic);
  EXPECT_NE(e.detail().find("normalize"), std::string::npos);
}

TEST(Parser, BadKetSymbolPosition) {
  const ParseError e = parse_error("state a = |02>\n");
  EXPECT_EQ(e.line(), 1);
  EXPECT_EQ(e.column(), 13);
}

TEST(Parser, ErrorOnSecondLine) {
  const ParseError e = parse_error("qubits 1\nobs s = sigma w 1\n");
  EXPECT_EQ(e.line(), 2);
  EXPECT_GT(e.column(), 1);
}

TEST(Parser, MalformedInputsCarryPositions) {
  const char* inputs[] = {
      "state a = |01\n",
      "qubits 2\nstate a = |00> +\n",
      "state a = |0>\nmeasure nothing outcomes +\n",
      "state a = (|0> + |1>\n",
      "qubits 2\nobs s = sigma z 5\n",
      "frobnicate x\n",
      "state F = |0>\n",
      "state a = |>\n",
      "state a = |0>\nstate a = |1>\n",
      "qubits 1\nstate a = |0>\nobs z = sigma z 1\nmeasure z outcomes 0\n",
  };
  for (const char* text : inputs) {
    const ParseError e = parse_error(text);
    EXPECT_GE(e.line(), 1) << text;
    EXPECT_GE(e.column(), 1) << text;
  }
}

TEST(Parser, CommentsAndBlankLines) {
  const Scenario sc = parse_scenario("# header\n\nstate a = |1>  # trailing\n\n");
  EXPECT_NE(sc.find_state("a"), nullptr);
}

TEST(Parser, RoundTripGenerated) {
  testing::ScenarioGenerator gen(7);
  int done = 0;
  for (int attempt = 0; attempt < 500 && done < 100; ++attempt) {
    const std::string text = gen.generate();
    Scenario first;
    try {
      first = parse_scenario(text);
    } catch (const ParseError& e) {
      ASSERT_EQ(e.kind(), ErrorKind::kSemantic) << e.what() << "\n" << text;
      continue;
    }
    const std::string printed = print_scenario(first);
    const Scenario second = parse_scenario(printed);
    ASSERT_EQ(first.states.size(), second.states.size());
    for (std::size_t k = 0; k < first.states.size(); ++k) {
      EXPECT_LT(max_abs_diff(first.states[k].second, second.states[k].second), 1e-10)
          << text << "\n" << printed;
    }
    EXPECT_EQ(print_scenario(second), printed);
    ++done;
  }
  EXPECT_EQ(done, 100);
}

TEST(ScenarioRun, MeasureUpdatesCurrentState) {
  const Scenario sc = parse_scenario(
      "qubits 2\n"
      "state s = singlet(1,2)\n"
      "obs z1 = sigma z 1\n"
      "obs z2 = sigma z 2\n"
      "measure z1 outcomes +\n"
      "assert_prob z2 - = 1\n");
  const RunResult r = run_scenario(sc);
  EXPECT_TRUE(r.assertions_passed);
  EXPECT_FALSE(r.runtime_error.has_value());
  ASSERT_EQ(r.events.size(), 2u);
  EXPECT_NEAR(r.events[0].joint_probability, 0.5, 1e-15);
}

TEST(ScenarioRun, FailedAssertion) {
  const Scenario sc = parse_scenario(
      "qubits 1\nstate s = |0>\nobs z = sigma z 1\nassert_prob z + = 1/2\n");
  EXPECT_FALSE(run_scenario(sc).assertions_passed);
}

TEST(ScenarioRun, ImpossibleMeasurementIsRuntimeError) {
  const Scenario sc = parse_scenario(
      "qubits 1\nstate s = |0>\nobs z = sigma z 1\nmeasure z outcomes -\n");
  const RunResult r = run_scenario(sc);
  ASSERT_TRUE(r.runtime_error.has_value());
  EXPECT_EQ(r.runtime_error_line, 4);
}

TEST(ScenarioRun, EmbeddedObservables) {
  const Scenario sc = parse_scenario(
      "qubits 8\n"
      "state et = 1/2 (|00++> * (psi0 + 1*sqrt(3) psi1))\n"
      "obs f = embed(F; 1,2,3,4; 8)\n"
      "obs g = embed(G; 5,6,7,8; 8)\n"
      "assert_prob f + = 1/12\n"
      "assert_prob f 0 = 11/12\n"
      "assert_prob g + = 3/4\n");
  EXPECT_TRUE(run_scenario(sc).assertions_passed);
}

}  // namespace
}  // namespace qcollapse::scenario
