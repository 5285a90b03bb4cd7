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

#include <string>
#include <string_view>
#include <vector>

#include "siqbarrier/asymptotics.hpp"

namespace siqbarrier {

enum class Method { closed_form, f_matrix, oracle };

std::string_view to_string(Method m);

/// What to do when a post-construction property check fails.
enum class CheckPolicy { enforce, warn };

/// F(-inf, +inf) = A(-inf) A(+inf)^{-1}.  Off-diagonal entries carry an
/// x-dependent factor: F12 gets |ϱ|^{2c}, F21 gets |ϱ|^{-2c}, with c the
/// carried exponent of the coefficient matrices.
struct EvolutionMatrix {
  std::array<std::array<ComplexX, 2>, 2> entry{};
  ComplexX carried_phase_exponent{};
  /// False when the two basis functions on a side do not carry equal flux
  /// (Eckart below the ε threshold).  Extraction then uses the
  /// flux-symmetric products F12·F21 and F11·F22.
  bool flux_normalized = true;

  ComplexX det() const;
};

struct ScatteringResult {
  Complex C_T;
  Complex C_R;
  double T = 0.0;
  double R = 0.0;
  Method method = Method::closed_form;
  double unitarity_residual = 0.0;
};

struct FMatrixOptions {
  AMatrixOptions a;
  CheckPolicy policy = CheckPolicy::enforce;
  double tolerance = 1e-10;
};

/// Throws SingularMatrixError if A(+inf) is singular, DomainError if the two
/// matrices carry different x-dependent exponents, and (under enforce)
/// ConservationError when det F = 1, |F12| >= 1, |F22| <= |F12| or
/// |F11| = |F22| fails by more than tolerance.  Under warn, failures are
/// appended to *warnings when given.
EvolutionMatrix evolution_matrix(const CoefficientMatrix& A_minus, const CoefficientMatrix& A_plus,
                                 CheckPolicy policy = CheckPolicy::enforce,
                                 double tolerance = 1e-10,
                                 std::vector<std::string>* warnings = nullptr);

/// Builds both coefficient matrices for (spec, E) and combines them.
EvolutionMatrix evolution_matrix(const BarrierSpec& spec, double E,
                                 const FMatrixOptions& options = {},
                                 std::vector<std::string>* warnings = nullptr);

/// C_T = 1/F12, C_R = F22/F12.  Throws DegenerateError when F12 = 0.
ScatteringResult scattering_from_f(const EvolutionMatrix& F);

/// Shorthand for scattering_from_f(evolution_matrix(spec, E, options)).
ScatteringResult f_matrix_coefficients(const BarrierSpec& spec, double E,
                                       const FMatrixOptions& options = {},
                                       std::vector<std::string>* warnings = nullptr);

/// Closed-form T and R evaluated in log space.  Amplitudes are reported as
/// the non-negative roots C_T = √T, C_R = √R.
ScatteringResult closed_form_coefficients(const BarrierSpec& spec, double E);

struct CrossValidation {
  double T_closed;
  double T_fmatrix;
  double R_closed;
  double R_fmatrix;
  double delta;  ///< max(|ΔT|, |ΔR|)
};

CrossValidation cross_validate(const BarrierSpec& spec, double E,
                               const FMatrixOptions& options = {});

/// Everything the property report needs about one evolution matrix.
struct FMatrixProperties {
  double det_residual;         ///< |det F - 1|
  double abs_F11, abs_F12, abs_F21, abs_F22;
  bool f12_at_least_one;       ///< |F12| >= 1 - tol
  bool f22_bounded_by_f12;     ///< |F22| <= |F12| + tol
  double diagonal_modulus_gap; ///< ||F11| - |F22||
  /// The sign relations F11 = -F22 and F21 = -F12 are observed, not enforced.
  double sign_residual_diagonal;      ///< |F11 + F22| / max(|F11|, |F22|)
  double sign_residual_off_diagonal;  ///< |F21 + F12| / max(|F12|, |F21|)
  bool diagonal_anti_equal;           ///< F11 = -F22 within tolerance
  bool off_diagonal_anti_equal;       ///< F21 = -F12 within tolerance
  double T;
  double R;
};

/// Evaluates properties without enforcing them.
FMatrixProperties f_matrix_properties(const BarrierSpec& spec, double E,
                                      const FMatrixOptions& options = {});

/// Closed-form |h|² of the Morse F (gamma moduli reduced with
/// |Γ(ir)|² = π/(r sinh πr) and |Γ(1/2 + iy)|² = π/cosh πy), and the same
/// quantity from the unreduced gamma expression.  Returns their relative gap.
double morse_h_reduction_gap(const BarrierSpec& spec, double E);

}  // namespace siqbarrier
