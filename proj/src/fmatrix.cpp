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

#include "siqbarrier/fmatrix.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "siqbarrier/errors.hpp"

namespace siqbarrier {
namespace {

using LD = long double;

Complex narrow(ComplexX z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

EvolutionMatrix combine(const CoefficientMatrix& Am, const CoefficientMatrix& Ap) {
  if (std::abs(Am.carried_phase_exponent - Ap.carried_phase_exponent) >
      1e-15L * (1 + std::abs(Ap.carried_phase_exponent)))
    throw DomainError("evolution_matrix: coefficient matrices carry different x-dependent factors");
  if (std::abs(Ap.carried_phase_exponent.real()) > 0)
    throw DomainError("evolution_matrix: carried factor is not of unit modulus");

  // Singular when the two determinant products cancel to rounding level.
  const auto& e = Ap.entry;
  const LD products = std::abs(e[0][0] * e[1][1]) + std::abs(e[0][1] * e[1][0]);
  const ComplexX d = Ap.det();
  if (!std::isfinite(std::abs(d)) || !(std::abs(d) > 1e-14L * products))
    throw SingularMatrixError("evolution_matrix: A(+inf) is singular");

  // A^{-1} = adj(A) / det A
  const auto& p = Ap.entry;
  const std::array<std::array<ComplexX, 2>, 2> inv{{{p[1][1] / d, -p[0][1] / d},
                                                     {-p[1][0] / d, p[0][0] / d}}};
  EvolutionMatrix F;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      F.entry[i][j] = Am.entry[i][0] * inv[0][j] + Am.entry[i][1] * inv[1][j];
  F.carried_phase_exponent = 2.0L * Ap.carried_phase_exponent;
  return F;
}

void check(const EvolutionMatrix& F, CheckPolicy policy, double tol,
           std::vector<std::string>* warnings) {
  std::vector<std::string> failures;
  const LD det_res = std::abs(F.det() - 1.0L);
  const LD f11 = std::abs(F.entry[0][0]);
  const LD f12 = std::abs(F.entry[0][1]);
  const LD f22 = std::abs(F.entry[1][1]);
  if (!(det_res <= tol)) failures.push_back(fmt::format("|det F - 1| = {:.3e}", double(det_res)));
  if (F.flux_normalized) {
    if (!(f12 >= 1 - tol)) failures.push_back(fmt::format("|F12| = {:.17g} < 1", double(f12)));
    if (!(f22 <= f12 + tol))
      failures.push_back(fmt::format("|F22| = {:.17g} > |F12| = {:.17g}", double(f22), double(f12)));
    if (!(std::abs(f11 - f22) <= tol * std::max<LD>(1, f22)))
      failures.push_back(fmt::format("||F11| - |F22|| = {:.3e}", double(std::abs(f11 - f22))));
  }
  if (failures.empty()) return;
  if (policy == CheckPolicy::enforce) {
    std::string msg = "evolution matrix property check failed:";
    for (const auto& f : failures) msg += " " + f + ";";
    throw ConservationError(msg);
  }
  if (warnings) warnings->insert(warnings->end(), failures.begin(), failures.end());
}

bool below_threshold(const BarrierSpec& spec, double E) {
  return spec.kind() == BarrierKind::eckart && dimensionless(spec, E).s->imag() != 0.0;
}

void require_energy(const BarrierSpec& spec, double E) {
  if (!std::isfinite(E)) throw DomainError("energy must be finite");
  if (spec.kind() != BarrierKind::parabolic && !(E > 0.0))
    throw DomainError(std::string("energy must be > 0 for the ") +
                      std::string(to_string(spec.kind())) + " barrier");
}

// Real s.  With C1 C2 = ρ e^{iφ}, multiplying out A(-inf) A(+inf)^{-1}
// leaves F11 = F22 = i tan φ and F12 = -conj(F21) = e^{i(arg C1 - arg C2)} / cos φ.
// Only the phase of one log-space product enters, so nothing cancels.
EvolutionMatrix eckart_evolution(const BarrierSpec& spec, double E, SignChoice sign) {
  const auto [l1, l2] = eckart_log_constants(spec, E, sign);
  const LD phi = l1.imag() + l2.imag();
  const LD c = std::cos(phi);
  if (c == 0) throw SingularMatrixError("evolution_matrix: A(+inf) is singular");
  EvolutionMatrix F;
  const ComplexX f12 = std::polar(1.0L, l1.imag() - l2.imag()) / c;
  const ComplexX diag(0, std::tan(phi));
  F.entry = {{{diag, f12}, {-std::conj(f12), diag}}};
  return F;
}

// (1/(1+e^{-d}), 1/(1+e^{d})) without overflow.
std::pair<double, double> logistic_pair(double d) {
  if (d >= 0) {
    const double e = std::exp(-d);
    return {1.0 / (1.0 + e), e / (1.0 + e)};
  }
  const double e = std::exp(d);
  return {e / (1.0 + e), 1.0 / (1.0 + e)};
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::closed_form: return "closed_form";
    case Method::f_matrix: return "f_matrix";
    case Method::oracle: return "oracle";
  }
  return "unknown";
}

ComplexX EvolutionMatrix::det() const {
  return entry[0][0] * entry[1][1] - entry[0][1] * entry[1][0];
}

EvolutionMatrix evolution_matrix(const CoefficientMatrix& A_minus, const CoefficientMatrix& A_plus,
                                 CheckPolicy policy, double tolerance,
                                 std::vector<std::string>* warnings) {
  EvolutionMatrix F = combine(A_minus, A_plus);
  check(F, policy, tolerance, warnings);
  return F;
}

EvolutionMatrix evolution_matrix(const BarrierSpec& spec, double E, const FMatrixOptions& options,
                                 std::vector<std::string>* warnings) {
  EvolutionMatrix F;
  if (spec.kind() == BarrierKind::morse && options.a.morse_minus == MorseMinusForm::continued) {
    // A(-inf) A(+inf)^{-1} = M exactly; skip the ill-conditioned round trip.
    F.entry = morse_connection_matrix(spec, E);
  } else if (spec.kind() == BarrierKind::eckart && !below_threshold(spec, E)) {
    F = eckart_evolution(spec, E, options.a.sign);
  } else {
    F = combine(a_matrix(spec, E, Side::minus_infinity, options.a),
                a_matrix(spec, E, Side::plus_infinity, options.a));
  }
  F.flux_normalized = !below_threshold(spec, E);
  check(F, options.policy, options.tolerance, warnings);
  return F;
}

ScatteringResult scattering_from_f(const EvolutionMatrix& F) {
  const ComplexX f12 = F.entry[0][1];
  if (!(std::abs(f12) > 0)) throw DegenerateError("scattering_from_f: F12 = 0, no transmitted wave");
  ScatteringResult out;
  out.method = Method::f_matrix;
  out.C_T = narrow(1.0L / f12);
  out.C_R = narrow(F.entry[1][1] / f12);
  LD T, R;
  if (F.flux_normalized) {
    const LD a12 = std::norm(f12);
    T = 1 / a12;
    R = std::norm(F.entry[1][1]) / a12;
  } else {
    const LD off = std::abs(f12 * F.entry[1][0]);
    T = 1 / off;
    R = std::abs(F.entry[0][0] * F.entry[1][1]) / off;
  }
  out.T = static_cast<double>(T);
  out.R = static_cast<double>(R);
  out.unitarity_residual = static_cast<double>(std::abs(T + R - 1));
  return out;
}

ScatteringResult f_matrix_coefficients(const BarrierSpec& spec, double E,
                                       const FMatrixOptions& options,
                                       std::vector<std::string>* warnings) {
  return scattering_from_f(evolution_matrix(spec, E, options, warnings));
}

ScatteringResult closed_form_coefficients(const BarrierSpec& spec, double E) {
  require_energy(spec, E);
  const auto p = dimensionless(spec, E);
  ScatteringResult out;
  out.method = Method::closed_form;
  switch (spec.kind()) {
    case BarrierKind::parabolic: {
      const double pl = pi * *p.lambda;
      const double zero[] = {0.0};
      const double num_r[] = {pl};
      const double den[] = {0.0, pl};
      out.T = stable_exp_ratio(zero, den);
      out.R = stable_exp_ratio(num_r, den);
      break;
    }
    case BarrierKind::morse: {
      const double s = p.s->real();
      const double r = *p.r;
      out.T = std::exp(-pi * (s + r) / 2 + log_sinh(pi * r) - log_cosh(pi * (s - r) / 2));
      const double num[] = {pi * (s - r) / 2, -pi * (s + 3 * r) / 2};
      const double den[] = {pi * (s - r) / 2, -pi * (s - r) / 2};
      out.R = stable_exp_ratio(num, den);
      break;
    }
    case BarrierKind::eckart: {
      const Complex s = *p.s;
      const double r = *p.r;
      // cosh(πs/2) is real: cosh for real s, cos(πσ/2) >= 0 for s = iσ, σ <= 1.
      const double log_cosh_s = s.imag() == 0.0 ? log_cosh(pi * s.real() / 2)
                                                : std::log(std::cos(pi * s.imag() / 2));
      const auto [T, R] = logistic_pair(2 * log_sinh(pi * r / 2) - 2 * log_cosh_s);
      out.T = T;
      out.R = R;
      break;
    }
  }
  out.C_T = std::sqrt(out.T);
  out.C_R = std::sqrt(out.R);
  out.unitarity_residual = std::abs(out.T + out.R - 1.0);
  return out;
}

CrossValidation cross_validate(const BarrierSpec& spec, double E, const FMatrixOptions& options) {
  const auto c = closed_form_coefficients(spec, E);
  const auto f = f_matrix_coefficients(spec, E, options);
  return {c.T, f.T, c.R, f.R, std::max(std::abs(c.T - f.T), std::abs(c.R - f.R))};
}

FMatrixProperties f_matrix_properties(const BarrierSpec& spec, double E,
                                      const FMatrixOptions& options) {
  FMatrixOptions relaxed = options;
  relaxed.policy = CheckPolicy::warn;
  const EvolutionMatrix F = evolution_matrix(spec, E, relaxed);
  const double tol = options.tolerance;
  FMatrixProperties out{};
  out.det_residual = static_cast<double>(std::abs(F.det() - 1.0L));
  out.abs_F11 = static_cast<double>(std::abs(F.entry[0][0]));
  out.abs_F12 = static_cast<double>(std::abs(F.entry[0][1]));
  out.abs_F21 = static_cast<double>(std::abs(F.entry[1][0]));
  out.abs_F22 = static_cast<double>(std::abs(F.entry[1][1]));
  out.f12_at_least_one = out.abs_F12 >= 1 - tol;
  out.f22_bounded_by_f12 = out.abs_F22 <= out.abs_F12 + tol;
  out.diagonal_modulus_gap = std::abs(out.abs_F11 - out.abs_F22);
  // Off-diagonal entries are compared at |ϱ| = 1.
  const ComplexX diag_sum = F.entry[0][0] + F.entry[1][1];
  const ComplexX off_sum = F.entry[0][1] + F.entry[1][0];
  out.sign_residual_diagonal = static_cast<double>(
      std::abs(diag_sum) / std::max<LD>({std::abs(F.entry[0][0]), std::abs(F.entry[1][1]), 1e-300L}));
  out.sign_residual_off_diagonal = static_cast<double>(
      std::abs(off_sum) / std::max<LD>({std::abs(F.entry[0][1]), std::abs(F.entry[1][0]), 1e-300L}));
  out.diagonal_anti_equal = out.sign_residual_diagonal <= tol;
  out.off_diagonal_anti_equal = out.sign_residual_off_diagonal <= tol;
  const auto sr = scattering_from_f(F);
  out.T = sr.T;
  out.R = sr.R;
  return out;
}

double morse_h_reduction_gap(const BarrierSpec& spec, double E) {
  if (spec.kind() != BarrierKind::morse) throw DomainError("morse_h_reduction_gap: not a Morse barrier");
  require_energy(spec, E);
  const auto p = dimensionless(spec, E);
  const LD s = p.s->real();
  const LD r = *p.r;
  const LD from_gamma = pi * (s + r) / 2 + std::log(r) +
                        2 * log_gamma(ComplexX(0.0L, r)).real() -
                        2 * log_gamma(ComplexX(0.5L, (s - r) / 2)).real();
  const LD reduced = pi * (s + r) / 2 + log_cosh(static_cast<double>(pi * (s - r) / 2)) -
                     log_sinh(static_cast<double>(pi * r));
  return static_cast<double>(std::abs(std::expm1(from_gamma - reduced)));
}

}  // namespace siqbarrier
