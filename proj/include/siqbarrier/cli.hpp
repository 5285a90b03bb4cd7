// Copyright 2026 siqbarrier contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "siqbarrier/fmatrix.hpp"
#include "siqbarrier/oracle.hpp"

namespace siqbarrier::cli {

enum class Command { compute, sweep, verify, shapecheck, props };
enum class MethodSelection { closed_form, f_matrix, oracle, all };
enum class OutputFormat { json, csv };

/// Process exit codes.
enum ExitCode : int { ok = 0, domain_failure = 1, usage_failure = 2, tolerance_failure = 3 };

struct RunRequest {
  Command command = Command::compute;
  BarrierSpec barrier = BarrierSpec::eckart(1.0, 1.0);
  std::optional<double> energy;
  std::vector<double> energy_grid;
  MethodSelection method = MethodSelection::all;
  OutputFormat format = OutputFormat::json;
  OracleConfig oracle;
  SignChoice sign = SignChoice::upper;
  CheckPolicy policy = CheckPolicy::enforce;
  /// verify: bound on |T_closed - T_oracle|.
  double tolerance = 1e-6;
  /// verify/props: bound on route and F-matrix property residuals.
  double fmatrix_tolerance = 1e-10;
  /// shapecheck grid and chain index.
  double x_min = -10.0;
  double x_max = 10.0;
  int points = 1000;
  int chain_index = 3;
  unsigned threads = 0;

  /// Throws ConfigurationError naming the offending field.
  void validate() const;
};

struct RunOutcome {
  int exit_code = ok;
  std::string output;       ///< stdout payload
  std::string diagnostics;  ///< stderr payload
};

/// Executes a validated request.  Never throws; failures map to exit codes.
RunOutcome run(const RunRequest& request);

/// Thrown by parse_arguments for --help; what() is the help text.
struct HelpRequested : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses command-line arguments (argv[0] is the program name) into a
/// request.  Throws ConfigurationError on invalid input and HelpRequested
/// for --help.
RunRequest parse_arguments(const std::vector<std::string>& args);

/// parse_arguments + run, writing to the given streams.  Returns the exit code.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace siqbarrier::cli
