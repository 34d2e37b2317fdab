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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "qcollapse/cli.hpp"
#include "qcollapse/error.hpp"
#include "qcollapse/measurement.hpp"
#include "qcollapse/observables.hpp"
#include "qcollapse/protocol.hpp"
#include "qcollapse/scenario.hpp"
#include "qcollapse/states.hpp"
#include "test_support.hpp"

#ifndef QCOLLAPSE_SOURCE_DIR
#define QCOLLAPSE_SOURCE_DIR "."
#endif

using namespace qcollapse;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

const int kAlice[] = {1, 2, 3, 4};
const int kBob[] = {5, 6, 7, 8};

Outcome overlaps() {
  Outcome r;
  const auto b = spin_zero_basis();
  const int up[] = {1, 1, 1, 1};
  const StateVector ket = outcome_ket(up);
  const double p1 = std::norm(inner(ket, b.phi1));
  const double a0 = std::abs(inner(ket, b.phi0));
  r.require(std::abs(p1 - 1.0 / 12.0) <= 1e-12, fmt::format("|<00++|phi1>|^2 = {}", p1));
  r.require(a0 <= 1e-12, fmt::format("|<00++|phi0>| = {}", a0));
  r.detail = r.ok ? fmt::format("overlap^2 = {:.15g}", p1) : r.detail;
  return r;
}

Outcome collapse_counterexample() {
  Outcome r;
  const auto f = embed(observable_F(), kAlice, 8);
  const Distribution d = born_distribution(eta_tilde(), f);
  const double pp = d.probability(1.0), pm = d.probability(-1.0), p0 = d.probability(0.0);
  r.require(std::abs(pp - 1.0 / 12.0) <= 1e-12, fmt::format("P(+1) = {}", pp));
  r.require(std::abs(pm) <= 1e-12, fmt::format("P(-1) = {}", pm));
  r.require(std::abs(p0 - 11.0 / 12.0) <= 1e-12, fmt::format("P(0) = {}", p0));
  const int up[] = {1, 1, 1, 1};
  const ProtocolReport pr = run_claimed_protocol(eta_tilde(), up);
  r.require(pr.claimed_value == ClaimedValue::kPlusOne, "claimed value is not +1");
  r.require(pr.verdict == Verdict::kRefuted, "verdict is not refuted");
  r.require(std::abs(pr.certainty - 1.0 / 12.0) <= 1e-12,
            fmt::format("certainty = {}", pr.certainty));
  if (r.ok) r.detail = fmt::format("P = (+1: {:.12g}, -1: {:.3g}, 0: {:.12g})", pp, pm, p0);
  return r;
}

Outcome impossible_branch() {
  Outcome r;
  const auto f = embed(observable_F(), kAlice, 8);
  try {
    collapse(eta_tilde(), f, -1.0);
    r.require(false, "collapse onto F=-1 did not throw");
  } catch (const Error& e) {
    r.require(e.kind() == ErrorKind::kZeroProbability,
              fmt::format("wrong error kind: {}", to_string(e.kind())));
    if (r.ok) r.detail = "zero-probability error raised";
  }
  return r;
}

Outcome dirac_audit_check() {
  Outcome r;
  const FunctionReport fr = dirac_audit();
  r.require(!fr.is_function, "F reported as a function of the local generators");
  r.require(fr.witness.has_value() && fr.witness->eigenspace_dim > 0, "no witness");

  const MatrixOperator zz = kron(pauli_z(), pauli_z());
  const auto target = SpectralObservable::from_matrix(zz);
  const SpectralObservable gens[] = {pauli(PauliAxis::kZ, 1, 2), pauli(PauliAxis::kZ, 2, 2)};
  const FunctionReport ctl = is_function_of(target, gens);
  r.require(ctl.is_function, "sigma_z1 sigma_z2 not a function of sigma_z1, sigma_z2");
  if (ctl.value_table) {
    r.require(ctl.value_table->size() == 4, "value table does not have 4 entries");
    for (const auto& [joint, value] : *ctl.value_table) {
      r.require(std::abs(value - joint[0] * joint[1]) <= 1e-10, "wrong value table entry");
    }
  } else {
    r.require(false, "missing value table");
  }
  if (r.ok) r.detail = fr.witness->description;
  return r;
}

Outcome invariance() {
  Outcome r;
  const std::pair<const char*, SpectralObservable> obs[] = {{"F", observable_F()},
                                                            {"G", observable_G()}};
  std::string detail;
  for (const auto& [name, o] : obs) {
    const auto eq = random_patterns(RotationPattern::Kind::kEqualOnAll, 4, 100, 11);
    const auto ps = random_patterns(RotationPattern::Kind::kPerSite, 4, 100, 12);
    const InvarianceReport e = check_invariance(o, eq);
    const InvarianceReport p = check_invariance(o, ps);
    const auto broken = std::count_if(p.deviations.begin(), p.deviations.end(),
                                      [](double d) { return d > 1e-3; });
    r.require(e.trials == 100 && e.max_deviation < 1e-9,
              fmt::format("{} equal-rotation deviation {}", name, e.max_deviation));
    r.require(broken >= 95, fmt::format("{} per-site broken in {} of 100", name, broken));
    detail += fmt::format("{}: equal max {:.2e}, per-site broken {}/100; ", name,
                          e.max_deviation, broken);
  }
  if (r.ok) r.detail = detail;
  return r;
}

Outcome bob_certainty() {
  Outcome r;
  const auto f = embed(observable_F(), kAlice, 8);
  const auto g = embed(observable_G(), kBob, 8);
  const CorrelationReport c = correlation_check(eta_tilde(), f, g);
  r.require(c.max_conditional_certainty < 1.0 - 1e-9, "Bob's outcome is certain");
  r.require(std::abs(c.max_conditional_certainty - 0.75) <= 1e-12,
            fmt::format("max conditional certainty = {}", c.max_conditional_certainty));
  r.require(!c.perfectly_correlated, "reported as perfectly correlated");
  if (r.ok) r.detail = fmt::format("max conditional certainty = {:.15g}", c.max_conditional_certainty);
  return r;
}

Outcome spin_zero_oracle() {
  Outcome r;
  const MatrixOperator s2 = total_spin_squared(4);
  const SpectralDecomposition d = hermitian_eigen(s2);
  const auto zeros = std::count_if(d.eigenvalues.begin(), d.eigenvalues.end(),
                                   [](double v) { return std::abs(v) < 1e-9; });
  r.require(zeros == 2, fmt::format("zero eigenspace has dimension {}", zeros));
  const auto b = spin_zero_basis();
  const double r0 = apply(s2, b.phi0).norm();
  const double r1 = apply(s2, b.phi1).norm();
  r.require(r0 < 1e-9 && r1 < 1e-9, fmt::format("residuals {} {}", r0, r1));
  if (r.ok) r.detail = fmt::format("dim 2, residuals {:.1e} {:.1e}", r0, r1);
  return r;
}

Outcome eigensolver() {
  Outcome r;
  const SpectralDecomposition d = hermitian_eigen(observable_F().matrix());
  int plus = 0, minus = 0, zero = 0, other = 0;
  for (double v : d.eigenvalues) {
    if (std::abs(v - 1) <= 1e-10) ++plus;
    else if (std::abs(v + 1) <= 1e-10) ++minus;
    else if (std::abs(v) <= 1e-10) ++zero;
    else ++other;
  }
  r.require(plus == 1 && minus == 1 && zero == 14 && other == 0,
            fmt::format("clusters +1 x{}, -1 x{}, 0 x{}, other {}", plus, minus, zero, other));
  std::mt19937_64 rng(8);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const MatrixOperator h = testing::random_hermitian(16, rng);
    worst = std::max(worst, max_abs_diff(reconstruct(hermitian_eigen(h)), h));
  }
  r.require(worst <= 1e-9, fmt::format("worst reconstruction error {}", worst));
  if (r.ok) r.detail = fmt::format("worst reconstruction error {:.2e}", worst);
  return r;
}

Outcome measurement_properties() {
  Outcome r;
  std::mt19937_64 rng(9);
  double worst_total = 0.0, worst_repeat = 0.0, worst_order = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 3;  // dims 4, 8, 16
    const StateVector s = testing::random_state(n, rng);
    const auto obs = SpectralObservable::from_matrix(
        testing::random_degenerate_hermitian(std::size_t{1} << n, rng));

    const Distribution d = born_distribution(s, obs);
    worst_total = std::max(worst_total, std::abs(d.total() - 1.0));

    for (const auto& [label, p] : d.entries) {
      if (p <= 1e-6) continue;
      const auto rec = collapse(s, obs, label.front());
      const double again = born_distribution(rec.post_state, obs).probability(label.front());
      worst_repeat = std::max(worst_repeat, 1.0 - again);
    }

    // Two observables on disjoint qubit blocks commute.
    const int left = 1 + trial % (n - 1);
    const MatrixOperator a = kron(testing::random_degenerate_hermitian(std::size_t{1} << left, rng),
                                  MatrixOperator::identity(std::size_t{1} << (n - left)));
    const MatrixOperator b = kron(MatrixOperator::identity(std::size_t{1} << left),
                                  testing::random_degenerate_hermitian(std::size_t{1} << (n - left), rng));
    const SpectralObservable ab[] = {SpectralObservable::from_matrix(a),
                                     SpectralObservable::from_matrix(b)};
    const SpectralObservable ba[] = {ab[1], ab[0]};
    const Distribution dab = sequence_distribution(s, ab);
    const Distribution dba = sequence_distribution(s, ba);
    for (const auto& [label, p] : dab.entries) {
      const double q = dba.probability({label[1], label[0]});
      worst_order = std::max(worst_order, std::abs(p - q));
    }
    for (const auto& [label, p] : dba.entries) {
      const double q = dab.probability({label[1], label[0]});
      worst_order = std::max(worst_order, std::abs(p - q));
    }
  }
  r.require(worst_total <= 1e-10, fmt::format("completeness error {}", worst_total));
  r.require(worst_repeat <= 1e-10, fmt::format("repeatability loss {}", worst_repeat));
  r.require(worst_order <= 1e-10, fmt::format("order dependence {}", worst_order));
  if (r.ok) {
    r.detail = fmt::format("completeness {:.1e}, repeatability {:.1e}, order {:.1e}",
                           worst_total, worst_repeat, worst_order);
  }
  return r;
}

Outcome sampling() {
  Outcome r;
  const SpectralObservable program[] = {embed(observable_F(), kAlice, 8)};
  const std::uint64_t trials = 1000000;
  const double p = 1.0 / 12.0;
  const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(trials));
  std::string detail;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const FrequencyTable t = sample(eta_tilde(), program, trials, seed);
    const double f = static_cast<double>(t.count({1.0})) / static_cast<double>(trials);
    const double z = (f - p) / sigma;
    r.require(std::abs(z) <= 4.0, fmt::format("seed {}: {} sigma", seed, z));
    detail += fmt::format("seed {}: {:+.2f} sigma; ", seed, z);
  }
  if (r.ok) r.detail = detail;
  return r;
}

bool states_match(const scenario::Scenario& a, const scenario::Scenario& b) {
  if (a.states.size() != b.states.size()) return false;
  for (std::size_t k = 0; k < a.states.size(); ++k) {
    if (a.states[k].first != b.states[k].first) return false;
    if (a.states[k].second.dim() != b.states[k].second.dim()) return false;
    if (max_abs_diff(a.states[k].second, b.states[k].second) > 1e-10) {
      return false;
    }
  }
  return true;
}

Outcome parser() {
  Outcome r;
  cli::RunConfig rc;
  rc.command = cli::Command::kRun;
  rc.input_path = std::string(QCOLLAPSE_SOURCE_DIR) + "/scenarios/refutation.qsc";
  std::ostringstream sink;
  const int code = cli::execute(rc, sink);
  r.require(code == 0, fmt::format("shipped scenario exited {}", code));

  testing::ScenarioGenerator gen(2024);
  int round_trips = 0, attempts = 0;
  while (round_trips < 100 && attempts < 1000) {
    ++attempts;
    const std::string text = gen.generate();
    scenario::Scenario first;
    try {
      first = scenario::parse_scenario(text);
    } catch (const ParseError& e) {
      if (e.kind() == ErrorKind::kSemantic) continue;  // exact cancellation
      r.require(false, fmt::format("generated scenario failed to parse: {}\n{}", e.what(), text));
      break;
    }
    const std::string printed = scenario::print_scenario(first);
    try {
      const scenario::Scenario second = scenario::parse_scenario(printed);
      r.require(states_match(first, second), "round trip changed a state:\n" + text);
      r.require(scenario::print_scenario(second) == printed, "printing is not a fixed point");
    } catch (const ParseError& e) {
      r.require(false, fmt::format("printed scenario failed to parse: {}\n{}", e.what(), printed));
    }
    if (!r.ok) break;
    ++round_trips;
  }
  r.require(round_trips == 100, fmt::format("only {} round trips", round_trips));

  const char* malformed[] = {
      "state a = |02>\n",
      "state a = |01\n",
      "qubits 2\nstate a = |00> +\n",
      "qubits 1\nobs s = sigma w 1\n",
      "state a = |0>\nmeasure nothing outcomes +\n",
      "state a = (|0> + |1>\n",
      "state a = |0> + |1>\n",
      "qubits 2\nobs s = sigma z 5\n",
      "frobnicate x\n",
      "state F = |0>\n",
  };
  int positioned = 0;
  for (const char* text : malformed) {
    try {
      scenario::parse_scenario(text);
    } catch (const ParseError& e) {
      if (e.line() >= 1 && e.column() >= 1) ++positioned;
    } catch (...) {
    }
  }
  r.require(positioned == 10, fmt::format("{} of 10 malformed inputs gave positioned errors",
                                          positioned));
  if (r.ok) {
    r.detail = fmt::format("scenario exit 0, 100 round trips ({} generated), 10/10 errors",
                           attempts);
  }
  return r;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"overlap reproduction", overlaps},
      {"collapse counterexample", collapse_counterexample},
      {"impossible branch", impossible_branch},
      {"function audit", dirac_audit_check},
      {"rotation invariance", invariance},
      {"no certain prediction for Bob", bob_certainty},
      {"spin-zero oracle", spin_zero_oracle},
      {"eigensolver round trip", eigensolver},
      {"measurement semantics", measurement_properties},
      {"sampling", sampling},
      {"parser", parser},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = fmt::format("unexpected exception: {}", e.what());
    }
    std::cout << fmt::format("{} criterion {:2d} {}: {}\n", o.ok ? "PASS" : "FAIL", index, name,
                             o.detail);
    failures += o.ok ? 0 : 1;
  }
  std::cout << fmt::format("{} of {} criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
