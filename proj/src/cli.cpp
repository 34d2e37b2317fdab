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

#include "qcollapse/cli.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include "json.hpp"

#include "qcollapse/error.hpp"
#include "qcollapse/protocol.hpp"
#include "qcollapse/scenario.hpp"

namespace qcollapse::cli {
namespace {

using Section = Report::Section;

std::string format_number(double x) { return fmt::format("{:.12g}", x); }

std::string format_outcome(double v) {
  const double r = std::round(v);
  if (std::abs(v - r) < 1e-9) {
    if (r == 0.0) return "0";
    return fmt::format("{:+d}", static_cast<long>(r));
  }
  return fmt::format("{:+.6g}", v);
}

std::string format_complex(Complex z) {
  if (std::abs(z.imag()) <= 1e-15) return format_number(z.real());
  return fmt::format("{:.12g}{:+.12g}i", z.real(), z.imag());
}

std::string format_signs(std::span<const int> signs) {
  std::string s;
  for (int v : signs) s.push_back(v > 0 ? '+' : '-');
  return s;
}

std::string label(std::span<const std::string> names, const OutcomeTuple& outcome) {
  std::string out;
  for (std::size_t k = 0; k < outcome.size(); ++k) {
    if (k > 0) out += ",";
    out += fmt::format("{}={}", names[k], format_outcome(outcome[k]));
  }
  return out;
}

std::string basis_label(std::size_t index, int n) {
  std::string bits;
  for (int k = n - 1; k >= 0; --k) bits.push_back(((index >> k) & 1) ? '1' : '0');
  return "|" + bits + ">";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kInvalidArgument, fmt::format("cannot read '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void add_distribution(Section& s, const std::string& name, const Distribution& d) {
  for (const auto& [outcome, p] : d.entries) {
    add(s, fmt::format("P({}={})", name, format_outcome(outcome.front())),
        Report::Probability{p});
  }
}

// Loads and parses the input scenario, recording parse or IO failures in the
// report. Returns nullopt when the report is already final.
std::optional<scenario::Scenario> load_scenario(const RunConfig& rc, const Config& cfg,
                                                Report& report) {
  if (!rc.input_path) {
    add(report.section("error"), "message", std::string("no scenario file given"));
    report.set_exit_code(kExitRuntime);
    return std::nullopt;
  }
  std::string text;
  try {
    text = read_file(*rc.input_path);
  } catch (const Error& e) {
    add(report.section("error"), "message", std::string(e.what()));
    report.set_exit_code(kExitRuntime);
    return std::nullopt;
  }
  try {
    return scenario::parse_scenario(text, cfg);
  } catch (const ParseError& e) {
    Section& s = report.section("parse error");
    add(s, "file", *rc.input_path);
    add(s, "line", std::int64_t{e.line()});
    add(s, "column", std::int64_t{e.column()});
    add(s, "message", e.detail());
    report.set_exit_code(kExitParse);
    return std::nullopt;
  }
}

void add_runtime_error(Report& report, const scenario::RunResult& r) {
  Section& s = report.section("runtime error");
  add(s, "line", std::int64_t{r.runtime_error_line});
  add(s, "message", *r.runtime_error);
  report.set_exit_code(kExitRuntime);
}

void add_events(Report& report, const scenario::RunResult& result) {
  using Kind = scenario::Event::Kind;
  for (const auto& ev : result.events) {
    switch (ev.kind) {
      case Kind::kMeasure: {
        Section& s = report.section(fmt::format("line {}: measure", ev.line));
        for (const auto& rec : ev.records) {
          add(s, fmt::format("P({}={})", rec.observable_id, format_outcome(rec.outcome)),
              Report::Probability{rec.probability});
        }
        add(s, "joint", Report::Probability{ev.joint_probability});
        break;
      }
      case Kind::kAssert: {
        Section& s = report.section(fmt::format("line {}: assert_prob", ev.line));
        add(s, fmt::format("P({}={})", ev.name, format_outcome(ev.outcome)),
            Report::Probability{ev.computed});
        add(s, "expected", Report::Probability{ev.expected});
        add(s, "passed", ev.passed);
        break;
      }
      case Kind::kReportObservable: {
        Section& s = report.section(fmt::format("line {}: report {}", ev.line, ev.name));
        add_distribution(s, ev.name, ev.distribution);
        break;
      }
      case Kind::kReportState: {
        Section& s = report.section(fmt::format("line {}: report {}", ev.line, ev.name));
        const StateVector& st = *ev.state;
        for (std::size_t k = 0; k < st.dim(); ++k) {
          if (std::abs(st[k]) > 1e-15) {
            add(s, basis_label(k, st.n_qubits()), format_complex(st[k]));
          }
        }
        break;
      }
    }
  }
}

const SpectralObservable* resolve_target(const RunConfig& rc, const Config& cfg,
                                         Report& report,
                                         std::optional<scenario::Scenario>& sc) {
  if (!rc.input_path) return nullptr;
  sc = load_scenario(rc, cfg, report);
  if (!sc) return nullptr;
  if (!rc.target) {
    add(report.section("error"), "message",
        std::string("--target is required with a scenario file"));
    report.set_exit_code(kExitRuntime);
    return nullptr;
  }
  const SpectralObservable* obs = sc->find_observable(*rc.target);
  if (!obs) {
    add(report.section("error"), "message",
        fmt::format("no observable named '{}'", *rc.target));
    report.set_exit_code(kExitRuntime);
  }
  return obs;
}

void add_function_report(Section& s, const FunctionReport& fr, int n_generators) {
  static const char* kNames[] = {"sigma_z1", "sigma_z2", "sigma_x3", "sigma_x4"};
  std::vector<std::string> names(kNames, kNames + std::min(n_generators, 4));
  add(s, "is_function", fr.is_function);
  if (fr.value_table) {
    for (const auto& [joint, value] : *fr.value_table) {
      add(s, fmt::format("value({})", label(names, joint)), value);
    }
  }
  if (fr.witness) {
    const auto& w = *fr.witness;
    add(s, "witness", label(names, w.joint_outcome));
    add(s, "witness_dim", static_cast<std::int64_t>(w.eigenspace_dim));
    for (const auto& [value, weight] : w.weight_by_value) {
      add(s, fmt::format("weight({})", format_outcome(value)), Report::Probability{weight});
    }
    add(s, "description", w.description);
  }
}

struct InvarianceSummary {
  InvarianceReport equal;
  InvarianceReport per_site;
  std::int64_t broken = 0;  // per-site trials with deviation > kBrokenThreshold
};

constexpr double kBrokenThreshold = 1e-3;

InvarianceSummary invariance_summary(const SpectralObservable& obs, int rotations,
                                     std::uint64_t seed, const Config& cfg) {
  InvarianceSummary r;
  const auto eq = random_patterns(RotationPattern::Kind::kEqualOnAll, obs.n_qubits(),
                                  rotations, derive_seed(seed, 1));
  const auto ps = random_patterns(RotationPattern::Kind::kPerSite, obs.n_qubits(),
                                  rotations, derive_seed(seed, 2));
  r.equal = check_invariance(obs, eq, cfg);
  r.per_site = check_invariance(obs, ps, cfg);
  for (double d : r.per_site.deviations) r.broken += d > kBrokenThreshold ? 1 : 0;
  return r;
}

void add_invariance(Section& s, const std::string& name, const InvarianceSummary& r) {
  add(s, fmt::format("{}.equal.max_deviation", name), r.equal.max_deviation);
  add(s, fmt::format("{}.equal.invariant", name), r.equal.invariant);
  add(s, fmt::format("{}.per_site.max_deviation", name), r.per_site.max_deviation);
  add(s, fmt::format("{}.per_site.broken", name), r.broken);
  add(s, fmt::format("{}.per_site.trials", name), std::int64_t{r.per_site.trials});
}

std::int64_t required_broken(int rotations) {
  return static_cast<std::int64_t>(std::ceil(0.95 * rotations));
}

}  // namespace

Config RunConfig::numeric_config() const {
  Config cfg;
  for (const auto& [name, value] : tolerance_overrides) {
    if (!cfg.set(name, value)) {
      throw std::invalid_argument(
          fmt::format("bad tolerance override {}={}", name, value));
    }
  }
  return cfg;
}

Section& Report::section(std::string name) {
  sections_.push_back({std::move(name), {}});
  return sections_.back();
}

void add(Section& s, std::string key, Report::Value v) {
  s.entries.emplace_back(std::move(key), std::move(v));
}

std::optional<std::pair<long, long>> small_rational(double x) {
  if (!std::isfinite(x) || std::abs(x) > 1e6) return std::nullopt;
  for (long q = 1; q <= 144; ++q) {
    const double p = std::round(x * static_cast<double>(q));
    if (std::abs(x - p / static_cast<double>(q)) <= 1e-12) {
      return std::pair<long, long>{static_cast<long>(p), q};
    }
  }
  return std::nullopt;
}

std::string format_probability(double p) {
  std::string out = format_number(p);
  if (auto r = small_rational(p)) {
    if (r->second == 1) {
      out += fmt::format(" (={})", r->first);
    } else {
      out += fmt::format(" (={}/{})", r->first, r->second);
    }
  }
  return out;
}

std::string Report::to_text() const {
  std::string out = fmt::format("qcollapse {}\n", command_);
  for (const auto& sec : sections_) {
    out += fmt::format("[{}]\n", sec.name);
    for (const auto& [key, value] : sec.entries) {
      std::string v = std::visit(
          [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Probability>) {
              return format_probability(x.value);
            } else if constexpr (std::is_same_v<T, double>) {
              return format_number(x);
            } else if constexpr (std::is_same_v<T, bool>) {
              return x ? "true" : "false";
            } else if constexpr (std::is_same_v<T, std::string>) {
              return x;
            } else {
              return fmt::format("{}", x);
            }
          },
          value);
      out += fmt::format("  {}={}\n", key, v);
    }
  }
  out += fmt::format("exit_code={}\n", exit_code_);
  return out;
}

std::string Report::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command_;
  j["sections"] = nlohmann::ordered_json::array();
  for (const auto& sec : sections_) {
    nlohmann::ordered_json entries = nlohmann::ordered_json::object();
    for (const auto& [key, value] : sec.entries) {
      std::visit(
          [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Probability>) {
              entries[key] = x.value;
            } else {
              entries[key] = x;
            }
          },
          value);
    }
    j["sections"].push_back({{"name", sec.name}, {"entries", std::move(entries)}});
  }
  j["exit_code"] = exit_code_;
  return j.dump(2) + "\n";
}

Report cmd_run(const RunConfig& rc) {
  Report report("run");
  const Config cfg = rc.numeric_config();
  auto sc = load_scenario(rc, cfg, report);
  if (!sc) return report;
  const auto result = scenario::run_scenario(*sc, cfg);
  add_events(report, result);
  if (result.runtime_error) {
    add_runtime_error(report, result);
    return report;
  }
  Section& s = report.section("summary");
  add(s, "assertions_passed", result.assertions_passed);
  report.set_exit_code(result.assertions_passed ? kExitOk : kExitFailed);
  return report;
}

Report cmd_sample(const RunConfig& rc) {
  Report report("sample");
  const Config cfg = rc.numeric_config();
  auto sc = load_scenario(rc, cfg, report);
  if (!sc) return report;
  const auto result = scenario::run_scenario(*sc, cfg);
  bool any_measure = false;
  for (const auto& ev : result.events) {
    if (ev.kind != scenario::Event::Kind::kMeasure) continue;
    any_measure = true;
    std::vector<SpectralObservable> program;
    for (const auto& n : ev.names) program.push_back(*sc->find_observable(n));
    const Distribution exact = sequence_distribution(*ev.pre_state, program, cfg);
    const FrequencyTable freq =
        sample(*ev.pre_state, program, rc.trials,
               derive_seed(rc.seed, static_cast<std::uint64_t>(ev.line)), cfg);
    Section& s = report.section(fmt::format("line {}: sample", ev.line));
    add(s, "trials", static_cast<std::int64_t>(rc.trials));
    const double n = static_cast<double>(rc.trials);
    for (const auto& [outcome, p] : exact.entries) {
      const std::string l = label(ev.names, outcome);
      const std::uint64_t c = freq.count(outcome, cfg.cluster);
      const double f = n > 0 ? static_cast<double>(c) / n : 0.0;
      const double sd = n > 0 ? std::sqrt(p * (1.0 - p) / n) : 0.0;
      double z = 0.0;
      if (sd > 1e-9) {
        z = (f - p) / sd;
      } else if (std::abs(f - p) > 1e-9) {
        z = std::numeric_limits<double>::infinity();
      }
      add(s, fmt::format("P({})", l), Report::Probability{p});
      add(s, fmt::format("count({})", l), static_cast<std::int64_t>(c));
      add(s, fmt::format("freq({})", l), f);
      add(s, fmt::format("sigma({})", l), z);
    }
  }
  if (result.runtime_error) {
    add_runtime_error(report, result);
    return report;
  }
  if (!any_measure) {
    add(report.section("error"), "message", std::string("scenario has no measure line"));
    report.set_exit_code(kExitRuntime);
    return report;
  }
  add(report.section("summary"), "assertions_passed", result.assertions_passed);
  report.set_exit_code(result.assertions_passed ? kExitOk : kExitFailed);
  return report;
}

Report cmd_audit_function(const RunConfig& rc) {
  Report report("audit-function");
  const Config cfg = rc.numeric_config();
  std::optional<scenario::Scenario> sc;
  SpectralObservable target = observable_F();
  std::string name = "F";
  if (rc.input_path) {
    const SpectralObservable* obs = resolve_target(rc, cfg, report, sc);
    if (!obs) return report;
    target = *obs;
    name = *rc.target;
  }
  try {
    const auto gens = local_generators(target.n_qubits());
    const FunctionReport fr = is_function_of(target, gens, cfg);
    Section& s = report.section(fmt::format("{} against sigma_z1, sigma_z2, sigma_x3, sigma_x4", name));
    add_function_report(s, fr, static_cast<int>(gens.size()));
  } catch (const Error& e) {
    add(report.section("error"), "message", std::string(e.what()));
    report.set_exit_code(kExitRuntime);
  }
  return report;
}

Report cmd_audit_invariance(const RunConfig& rc) {
  Report report("audit-invariance");
  const Config cfg = rc.numeric_config();
  std::vector<std::pair<std::string, SpectralObservable>> targets;
  std::optional<scenario::Scenario> sc;
  if (rc.input_path) {
    const SpectralObservable* obs = resolve_target(rc, cfg, report, sc);
    if (!obs) return report;
    targets.emplace_back(*rc.target, *obs);
  } else {
    targets.emplace_back("F", observable_F());
    targets.emplace_back("G", observable_G());
  }
  Section& s = report.section("invariance");
  add(s, "seed", static_cast<std::int64_t>(rc.seed));
  add(s, "rotations", std::int64_t{rc.rotations});
  try {
    for (std::size_t k = 0; k < targets.size(); ++k) {
      add_invariance(s, targets[k].first,
                     invariance_summary(targets[k].second, rc.rotations,
                                        derive_seed(rc.seed, k), cfg));
    }
  } catch (const Error& e) {
    add(report.section("error"), "message", std::string(e.what()));
    report.set_exit_code(kExitRuntime);
  }
  return report;
}

Report cmd_refutation(const RunConfig& rc) {
  Report report("refute");
  const Config cfg = rc.numeric_config();
  std::vector<std::pair<int, std::string>> failed;
  auto stage = [&](int k, const std::string& name, bool ok, Section& s) {
    add(s, "result", std::string(ok ? "pass" : "fail"));
    if (!ok) failed.emplace_back(k, name);
  };

  // Basis and assignment table.
  {
    Section& s = report.section("assignment table");
    add(s, "basis", std::string("phi0 = s12*s34, phi1 = (2 s13*s24 - phi0)/sqrt(3)"));
    add(s, "note", std::string("another orthonormal basis of the spin-zero subspace rotates "
                               "these overlaps and can change the assignments"));
    for (const auto& row : assignment_table(cfg)) {
      add(s, format_signs(row.signs),
          fmt::format("{} <phi0>={} <phi1>={}", to_string(row.value),
                      format_complex(row.overlap_minus), format_complex(row.overlap_plus)));
    }
  }

  try {
    // Stage 1: spin-zero overlaps.
    {
      Section& s = report.section("stage 1: spin-zero basis");
      const SpinZeroBasis b = spin_zero_basis();
      const int up[] = {1, 1, 1, 1};
      const StateVector ket = outcome_ket(up);
      const double p1 = std::norm(inner(ket, b.phi1));
      const double p0 = std::norm(inner(ket, b.phi0));
      const MatrixOperator s2 = total_spin_squared(4, cfg);
      const double r0 = apply(s2, b.phi0).norm();
      const double r1 = apply(s2, b.phi1).norm();
      add(s, "|<00++|phi1>|^2", Report::Probability{p1});
      add(s, "|<00++|phi0>|^2", Report::Probability{p0});
      add(s, "|S^2 phi0|", r0);
      add(s, "|S^2 phi1|", r1);
      stage(1, "spin-zero basis",
            std::abs(p1 - 1.0 / 12.0) <= 1e-12 && p0 <= 1e-12 && r0 <= cfg.recon &&
                r1 <= cfg.recon,
            s);
    }

    // Stage 2: the claimed protocol on eta_tilde with outcome ++++.
    {
      Section& s = report.section("stage 2: claimed protocol");
      const int up[] = {1, 1, 1, 1};
      const ProtocolReport pr = run_claimed_protocol(eta_tilde(), up, cfg);
      add(s, "outcome", format_signs(pr.outcome_string));
      add(s, "P(outcome)", Report::Probability{pr.outcome_probability});
      add(s, "claimed", std::string(to_string(pr.claimed_value)));
      add_distribution(s, "F", pr.quantum_distribution);
      add(s, "certainty", Report::Probability{pr.certainty});
      add(s, "verdict", std::string(to_string(pr.verdict)));
      stage(2, "claimed protocol",
            pr.claimed_value == ClaimedValue::kPlusOne && pr.verdict == Verdict::kRefuted, s);
    }

    // Stage 3: F is not a function of the local generators.
    {
      Section& s = report.section("stage 3: function audit");
      const FunctionReport fr = dirac_audit(cfg);
      add_function_report(s, fr, 4);
      stage(3, "function audit", !fr.is_function, s);
    }

    // Stage 4: invariance under equal and per-site rotations.
    {
      Section& s = report.section("stage 4: invariance");
      add(s, "seed", static_cast<std::int64_t>(rc.seed));
      add(s, "rotations", std::int64_t{rc.rotations});
      add(s, "required_broken", required_broken(rc.rotations));
      bool ok = true;
      const std::pair<std::string, SpectralObservable> obs[] = {{"F", observable_F()},
                                                                {"G", observable_G()}};
      for (std::size_t k = 0; k < 2; ++k) {
        const auto r = invariance_summary(obs[k].second, rc.rotations,
                                          derive_seed(rc.seed, k), cfg);
        add_invariance(s, obs[k].first, r);
        ok = ok && r.equal.invariant && r.broken >= required_broken(rc.rotations);
      }
      stage(4, "invariance", ok, s);
    }

    // Stage 5: F on Alice and G on Bob are not perfectly correlated.
    {
      Section& s = report.section("stage 5: correlation");
      const int alice[] = {1, 2, 3, 4};
      const int bob[] = {5, 6, 7, 8};
      const auto f = embed(observable_F(), alice, 8, cfg);
      const auto g = embed(observable_G(), bob, 8, cfg);
      const CorrelationReport cr = correlation_check(eta_tilde(), f, g, cfg);
      const std::string names[] = {"F", "G"};
      for (const auto& [outcome, p] : cr.joint.entries) {
        add(s, fmt::format("P({})", label(names, outcome)), Report::Probability{p});
      }
      add(s, "max_conditional_certainty", Report::Probability{cr.max_conditional_certainty});
      add(s, "min_conditional_certainty", Report::Probability{cr.min_conditional_certainty});
      add(s, "perfectly_correlated", cr.perfectly_correlated);
      stage(5, "correlation", !cr.perfectly_correlated, s);
    }
  } catch (const Error& e) {
    add(report.section("runtime error"), "message", std::string(e.what()));
    report.set_exit_code(kExitRuntime);
    return report;
  }

  Section& s = report.section("summary");
  if (failed.empty()) {
    add(s, "result", std::string("refuted"));
    report.set_exit_code(kExitOk);
  } else {
    add(s, "result", std::string("stage failed"));
    add(s, "failed_stage", fmt::format("{} {}", failed.front().first, failed.front().second));
    report.set_exit_code(kExitFailed);
  }
  return report;
}

int execute(const RunConfig& config, std::ostream& out) {
  Report report("");
  switch (config.command) {
    case Command::kRun: report = cmd_run(config); break;
    case Command::kRefute: report = cmd_refutation(config); break;
    case Command::kSample: report = cmd_sample(config); break;
    case Command::kAuditFunction: report = cmd_audit_function(config); break;
    case Command::kAuditInvariance: report = cmd_audit_invariance(config); break;
  }
  out << report.render(config.format);
  return report.exit_code();
}

}  // namespace qcollapse::cli
