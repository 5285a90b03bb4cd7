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

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "siqbarrier/barriers.hpp"

namespace siqbarrier {

enum class Incidence { from_left, from_right };

/// Settings of the direct Numerov solver.
struct OracleConfig {
  /// Initial window; a family default is used for any end left empty.
  std::optional<double> x_left;
  std::optional<double> x_right;
  /// Upper bound on q·|Δx| per step at refinement level 0.
  double max_step_phase = 0.05;
  /// Upper bound on |Q|/q² at the matching points, where Q is the residual
  /// that the local WKB pair leaves in the Schrödinger equation.
  double wkb_quality_threshold = 1e-6;
  /// Level l uses steps 2^-l times the level-0 step; the estimate compares
  /// the last two levels.
  int refinement_levels = 2;
  /// Move matching points outward until the quality bound holds.
  bool auto_extend = true;
  /// Hard cap on the auto-extended distance from the origin, as a multiple
  /// of the initial distance.
  double window_cap_factor = 10.0;
  Incidence incidence = Incidence::from_left;

  /// Throws ConfigurationError for inconsistent settings.
  void validate() const;
};

struct OracleResult {
  double T = 0.0;
  double R = 0.0;
  double unitarity_residual = 0.0;
  std::pair<double, double> matching_points{};
  double error_estimate = 0.0;
  double quality_left = 0.0;   ///< |Q|/q² at x_L
  double quality_right = 0.0;  ///< |Q|/q² at x_R
  std::vector<double> level_T;  ///< T at each refinement level
  long long steps = 0;          ///< Numerov steps summed over levels
};

/// |Q|/q² for the local WKB pair at x, +inf where E <= V(x).
double wkb_quality(const BarrierSpec& spec, double E, double x);

/// Family default window before auto-extension.
std::pair<double, double> default_window(const BarrierSpec& spec, double E);

/// Integrates the Schrödinger equation from the transmitted side with a
/// pure outgoing WKB wave and projects onto the local WKB pair on the
/// incident side.
///
/// Throws DomainError for inadmissible E, PrecisionError when the window cap
/// is reached before the quality bound holds, ConfigurationError on bad
/// settings or step underflow.
OracleResult solve(const BarrierSpec& spec, double E, const OracleConfig& cfg = {});

struct SweepEntry {
  double energy = 0.0;
  std::optional<OracleResult> result;
  std::string error;  ///< empty on success
};

/// Element-wise solve, in grid order, on up to `threads` workers
/// (0 = SIQBARRIER_THREADS).  Per-energy failures are recorded in the entry.
/// Throws DomainError if the grid is not strictly increasing.
std::vector<SweepEntry> sweep(const BarrierSpec& spec, std::span<const double> grid,
                              const OracleConfig& cfg = {}, unsigned threads = 0);

}  // namespace siqbarrier
