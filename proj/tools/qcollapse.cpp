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

// qcollapse: runs scenario files and the built-in refutation checks.
//
//   qcollapse run FILE [--tol name=value]... [--format text|json]
//   qcollapse refute [--seed N] [--rotations N]
//   qcollapse sample FILE [--trials N] [--seed N]
//   qcollapse audit-function [FILE --target NAME]
//   qcollapse audit-invariance [FILE --target NAME] [--seed N] [--rotations N]

#include <iostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "qcollapse/cli.hpp"

namespace {

using qcollapse::cli::Command;
using qcollapse::cli::RunConfig;

struct Options {
  std::string input;
  std::vector<std::string> tolerances;
  std::string format = "text";
  std::string target;
};

void add_common(CLI::App* sub, RunConfig& rc, Options& o) {
  sub->add_option("--tol", o.tolerances, "Tolerance override, name=value (repeatable)");
  sub->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  sub->add_option("--seed", rc.seed, "RNG seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum measurement and collapse scenarios"};
  app.require_subcommand(1);
  RunConfig rc;
  Options o;

  auto* run = app.add_subcommand("run", "Execute a scenario file");
  run->add_option("file", o.input, "Scenario file")->required();
  add_common(run, rc, o);

  auto* refute = app.add_subcommand("refute", "Run the five-stage refutation report");
  refute->add_option("--rotations", rc.rotations, "Random rotations per family")
      ->check(CLI::PositiveNumber);
  add_common(refute, rc, o);

  auto* sample = app.add_subcommand("sample", "Monte Carlo check of each measure line");
  sample->add_option("file", o.input, "Scenario file")->required();
  sample->add_option("--trials", rc.trials, "Trials per measure line");
  add_common(sample, rc, o);

  auto* audit_f = app.add_subcommand("audit-function",
                                     "Is the observable a function of the local generators");
  audit_f->add_option("file", o.input, "Scenario file with the target observable");
  audit_f->add_option("--target", o.target, "Observable name in the scenario");
  add_common(audit_f, rc, o);

  auto* audit_i = app.add_subcommand("audit-invariance",
                                     "Invariance under random local rotations");
  audit_i->add_option("file", o.input, "Scenario file with the target observable");
  audit_i->add_option("--target", o.target, "Observable name in the scenario");
  audit_i->add_option("--rotations", rc.rotations, "Random rotations per family")
      ->check(CLI::PositiveNumber);
  add_common(audit_i, rc, o);

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) rc.command = Command::kRun;
  if (refute->parsed()) rc.command = Command::kRefute;
  if (sample->parsed()) rc.command = Command::kSample;
  if (audit_f->parsed()) rc.command = Command::kAuditFunction;
  if (audit_i->parsed()) rc.command = Command::kAuditInvariance;
  if (!o.input.empty()) rc.input_path = o.input;
  if (!o.target.empty()) rc.target = o.target;
  rc.format = o.format == "json" ? qcollapse::cli::Format::kJson
                                 : qcollapse::cli::Format::kText;

  for (const auto& t : o.tolerances) {
    const auto eq = t.find('=');
    try {
      if (eq == std::string::npos) throw std::invalid_argument(t);
      rc.tolerance_overrides[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
    } catch (const std::exception&) {
      std::cerr << "bad --tol '" << t << "', expected name=value\n";
      return qcollapse::cli::kExitParse;
    }
  }
  try {
    (void)rc.numeric_config();
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return qcollapse::cli::kExitParse;
  }
  return qcollapse::cli::execute(rc, std::cout);
}
