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

// Command implementations behind the `qcollapse` executable. Each command
// writes one deterministic report to `out` and returns the process exit code.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qcollapse/config.hpp"

namespace qcollapse::cli {

enum class Command { kRun, kRefute, kSample, kAuditFunction, kAuditInvariance };
enum class Format { kText, kJson };

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;    // assertion or expected verdict failed
inline constexpr int kExitParse = 2;     // scenario did not parse
inline constexpr int kExitRuntime = 3;   // dimension / zero-probability / IO

struct RunConfig {
  Command command = Command::kRun;
  std::optional<std::string> input_path;
  std::uint64_t seed = 0;
  std::uint64_t trials = 100000;
  int rotations = 100;
  std::map<std::string, double> tolerance_overrides;
  Format format = Format::kText;
  std::optional<std::string> target;  // observable name for the audits

  /// Defaults with the overrides applied. Throws std::invalid_argument on an
  /// unknown tolerance name or a non-positive value.
  Config numeric_config() const;
};

/// A report is an ordered list of sections of typed key/value entries.
/// Probabilities get an exact-rational annotation in text form.
class Report {
 public:
  struct Probability {
    double value;
  };
  using Value = std::variant<Probability, double, std::int64_t, bool, std::string>;
  struct Section {
    std::string name;
    std::vector<std::pair<std::string, Value>> entries;
  };

  explicit Report(std::string command) : command_(std::move(command)) {}

  Section& section(std::string name);
  void set_exit_code(int code) { exit_code_ = code; }
  int exit_code() const { return exit_code_; }
  const std::vector<Section>& sections() const { return sections_; }

  std::string to_text() const;
  std::string to_json() const;
  std::string render(Format f) const { return f == Format::kJson ? to_json() : to_text(); }

 private:
  std::string command_;
  std::vector<Section> sections_;
  int exit_code_ = 0;
};

void add(Report::Section& s, std::string key, Report::Value v);

/// "0.0833333333333 (=1/12)": 12 significant digits, plus p/q when the value
/// lies within 1e-12 of a fraction with q <= 144.
std::string format_probability(double p);
std::optional<std::pair<long, long>> small_rational(double x);

Report cmd_run(const RunConfig& config);
Report cmd_refutation(const RunConfig& config);
Report cmd_sample(const RunConfig& config);
Report cmd_audit_function(const RunConfig& config);
Report cmd_audit_invariance(const RunConfig& config);

/// Dispatches on `config.command`, writes the rendered report to `out` and
/// returns the exit code.
int execute(const RunConfig& config, std::ostream& out);

}  // namespace qcollapse::cli
