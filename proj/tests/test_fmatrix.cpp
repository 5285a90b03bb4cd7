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

#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "siqbarrier/errors.hpp"
#include "siqbarrier/fmatrix.hpp"

using namespace siqbarrier;

namespace {

using C = std::complex<double>;
constexpr C I{0.0, 1.0};

C to_c(ComplexX z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

BarrierSpec parabolic_unit() { return BarrierSpec::parabolic(1.0, 1.0); }  // ε0 = 1/2
double parabolic_energy(double lambda) { return 1.0 - 0.5 * lambda; }
BarrierSpec morse_sr(double s) { return BarrierSpec::morse(s * s / 8.0, 1.0); }
double morse_energy(double r) { return r * r / 8.0; }
BarrierSpec eckart_sr(double s) { return BarrierSpec::eckart((s * s + 1.0) / 32.0, 1.0); }
double eckart_energy(double r) { return r * r / 32.0; }

std::vector<double> energy_grid(double V0, int n = 200) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = V0 * (0.05 + (5.0 - 0.05) * i / (n - 1));
  return g;
}

std::vector<double> geometric(double a, double b, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = a * std::pow(b / a, double(i) / (n - 1));
  return g;
}

const std::vector<SignChoice> signs{SignChoice::upper, SignChoice::lower};

std::vector<BarrierSpec> families() {
  return {BarrierSpec::parabolic(1.3, 0.8, {1.0, 1.7}), BarrierSpec::morse(2.0, 0.7),
          BarrierSpec::eckart(1.0, 1.0), BarrierSpec::morse(1.0, 1.0, {0.6, 1.4}),
          BarrierSpec::eckart(3.0, 0.5, {1.2, 0.9})};
}

}  // namespace

TEST(EvolutionMatrix, EqualMatricesGiveIdentityAndDegenerateExtraction) {
  const auto A = a_matrix(eckart_sr(2.0), 0.1, Side::plus_infinity);
  std::vector<std::string> warnings;
  const auto F = evolution_matrix(A, A, CheckPolicy::warn, 1e-10, &warnings);
  EXPECT_NEAR(std::abs(to_c(F.det()) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(to_c(F.entry[0][0]) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(to_c(F.entry[1][1]) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(to_c(F.entry[0][1])), 0.0, 1e-15);
  EXPECT_FALSE(warnings.empty());  // |F12| >= 1 fails
  EXPECT_THROW(evolution_matrix(A, A), ConservationError);

  EvolutionMatrix identity;
  identity.entry = {{{1.0L, 0.0L}, {0.0L, 1.0L}}};
  EXPECT_THROW(scattering_from_f(identity), DegenerateError);
}

TEST(EvolutionMatrix, SingularPlusMatrixIsRejected) {
  CoefficientMatrix Ap;
  Ap.entry = {{{1.0L, 2.0L}, {2.0L, 4.0L}}};
  const auto Am = a_matrix(eckart_sr(2.0), 0.1, Side::minus_infinity);
  EXPECT_THROW(evolution_matrix(Am, Ap), SingularMatrixError);
  CoefficientMatrix zero;
  EXPECT_THROW(evolution_matrix(Am, zero), SingularMatrixError);
}

TEST(EvolutionMatrix, MismatchedCarriedFactorsAreRejected) {
  const auto spec = parabolic_unit();
  const auto Am = a_matrix(spec, 0.5, Side::minus_infinity);
  const auto Ap = a_matrix(spec, 0.9, Side::plus_infinity);
  EXPECT_THROW(evolution_matrix(Am, Ap), DomainError);
}

TEST(EvolutionMatrix, ParabolicEntries) {
  for (double lambda : {-5.0, -1.0, 0.0, 0.5, 2.0, 6.0}) {
    const auto F = evolution_matrix(parabolic_unit(), parabolic_energy(lambda));
    const C expected_diag = I * std::exp(pi * lambda / 2);
    EXPECT_LT(std::abs(to_c(F.entry[0][0]) - expected_diag), 1e-12 * std::abs(expected_diag));
    EXPECT_LT(std::abs(to_c(F.entry[1][1]) - expected_diag), 1e-12 * std::abs(expected_diag));
    const double f12sq = std::norm(to_c(F.entry[0][1]));
    EXPECT_NEAR(f12sq, 1.0 + std::exp(pi * lambda), 1e-12 * (1.0 + std::exp(pi * lambda)));
    EXPECT_NEAR(static_cast<double>(F.carried_phase_exponent.imag()), lambda, 1e-15);
    EXPECT_NEAR(std::abs(to_c(F.det()) - 1.0), 0.0, 1e-10);
  }
}

TEST(EvolutionMatrix, EckartConjugateStructure) {
  for (auto sg : signs)
    for (double s : {0.5, 2.0, 4.0})
      for (double r : {0.3, 2.0, 5.0}) {
        const auto F = evolution_matrix(eckart_sr(s), eckart_energy(r), {{sg}});
        const C g = to_c(F.entry[0][0]), h = to_c(F.entry[0][1]);
        EXPECT_LT(std::abs(to_c(F.entry[1][0]) + std::conj(h)), 1e-11 * std::abs(h));
        EXPECT_LT(std::abs(to_c(F.entry[1][1]) + std::conj(g)), 1e-11 * std::max(1.0, std::abs(g)));
        EXPECT_NEAR(std::norm(h) - std::norm(g), 1.0, 1e-10 * std::norm(h));
        EXPECT_TRUE(F.flux_normalized);
      }
}

TEST(EvolutionMatrix, MorseOffDiagonalModulus) {
  for (double s : {0.5, 2.0, 4.0})
    for (double r : {0.3, 2.0, 5.0}) {
      const auto F = evolution_matrix(morse_sr(s), morse_energy(r));
      const double h2 = std::exp(pi * (s + r) / 2) * std::cosh(pi * (s - r) / 2) / std::sinh(pi * r);
      EXPECT_NEAR(std::norm(to_c(F.entry[0][1])), h2, 1e-11 * h2) << s << " " << r;
      EXPECT_NEAR(std::norm(to_c(F.entry[0][1])) - std::norm(to_c(F.entry[1][1])), 1.0, 1e-10 * h2);
      EXPECT_LT(morse_h_reduction_gap(morse_sr(s), morse_energy(r)), 1e-10);
    }
  EXPECT_THROW(morse_h_reduction_gap(eckart_sr(1.0), 0.1), DomainError);
}

TEST(EvolutionMatrix, DirectFormsMatchGenericProduct) {
  // At moderate s, r the product A(-inf) A(+inf)^{-1} is well conditioned.
  for (auto sg : signs)
    for (double s : {0.7, 2.0, 3.0})
      for (double r : {0.4, 1.5, 3.0}) {
        for (const auto& [spec, E] : {std::pair{morse_sr(s), morse_energy(r)},
                                      std::pair{eckart_sr(s), eckart_energy(r)}}) {
          const AMatrixOptions opt{sg};
          const auto direct = evolution_matrix(spec, E, {opt});
          const auto generic = evolution_matrix(a_matrix(spec, E, Side::minus_infinity, opt),
                                                a_matrix(spec, E, Side::plus_infinity, opt));
          for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
              const C d = to_c(direct.entry[i][j]), g = to_c(generic.entry[i][j]);
              EXPECT_LT(std::abs(d - g), 1e-11 * std::max(1.0, std::abs(g)))
                  << to_string(spec.kind()) << " s=" << s << " r=" << r << " (" << i << j << ")";
            }
        }
      }
}

TEST(EvolutionMatrix, InvariantUnderCommonColumnRescaling) {
  // A solution multiplied by a branch factor at both ends leaves F unchanged.
  const std::vector<ComplexX> factors{std::polar(1.0L, 2.0L), ComplexX(0.0L, -3.5L), std::exp(ComplexX(0.7L, 1.3L))};
  for (const auto& [spec, E] : {std::pair{parabolic_unit(), parabolic_energy(0.8)},
                                std::pair{morse_sr(2.0), morse_energy(1.0)},
                                std::pair{eckart_sr(1.5), eckart_energy(2.0)}}) {
    auto Am = a_matrix(spec, E, Side::minus_infinity);
    auto Ap = a_matrix(spec, E, Side::plus_infinity);
    const auto F0 = evolution_matrix(Am, Ap);
    for (int col = 0; col < 2; ++col)
      for (const auto& f : factors) {
        auto Bm = Am, Bp = Ap;
        for (int row = 0; row < 2; ++row) Bm.entry[row][col] *= f, Bp.entry[row][col] *= f;
        const auto F1 = evolution_matrix(Bm, Bp);
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            EXPECT_LT(std::abs(to_c(F1.entry[i][j] - F0.entry[i][j])), 1e-12 * std::max(1.0L, std::abs(F0.entry[i][j])))
                << to_string(spec.kind());
      }
  }
}

TEST(Scattering, ExtractionExamples) {
  EvolutionMatrix F;
  const double r2 = std::sqrt(2.0);
  F.entry = {{{ComplexX(0.0L, 1.0L), ComplexX(0.0L, r2)}, {ComplexX(0.0L, -r2), ComplexX(0.0L, 1.0L)}}};
  const auto sr = scattering_from_f(F);
  EXPECT_NEAR(sr.T, 0.5, 1e-15);
  EXPECT_NEAR(sr.R, 0.5, 1e-15);
  EXPECT_LE(sr.unitarity_residual, 1e-15);
  EXPECT_EQ(sr.method, Method::f_matrix);
  EXPECT_NEAR(std::abs(sr.C_T - 1.0 / C(0.0, r2)), 0.0, 1e-15);

  const auto par = f_matrix_coefficients(parabolic_unit(), 1.0);
  EXPECT_NEAR(par.T, 0.5, 1e-13);
  EXPECT_NEAR(par.R, 0.5, 1e-13);

  for (double r : {0.5, 1.0, 2.0, 3.0}) {
    const auto m = f_matrix_coefficients(morse_sr(r), morse_energy(r));
    EXPECT_NEAR(m.T, -std::expm1(-2 * pi * r) / 2, 1e-12);
  }
}

TEST(ClosedForm, Examples) {
  const auto half = closed_form_coefficients(parabolic_unit(), 1.0);
  EXPECT_DOUBLE_EQ(half.T, 0.5);
  EXPECT_DOUBLE_EQ(half.R, 0.5);
  EXPECT_EQ(half.method, Method::closed_form);

  const auto p1 = closed_form_coefficients(parabolic_unit(), parabolic_energy(1.0));
  EXPECT_NEAR(p1.T, 1.0 / (1.0 + std::exp(pi)), 1e-15);
  EXPECT_NEAR(p1.T, 0.04142383216636283, 1e-15);

  const auto m = closed_form_coefficients(morse_sr(2.0), morse_energy(2.0));
  EXPECT_NEAR(m.T, -std::expm1(-4 * pi) / 2, 1e-15);
  EXPECT_NEAR(m.R, (1 + std::exp(-4 * pi)) / 2, 1e-15);
  EXPECT_NEAR(m.T, 0.4999982563288, 1e-12);

  const auto e = closed_form_coefficients(eckart_sr(2.0), eckart_energy(2.0));
  const double sh2 = std::pow(std::sinh(pi), 2), ch2 = std::pow(std::cosh(pi), 2);
  EXPECT_NEAR(e.T, sh2 / (sh2 + ch2), 1e-15);
  EXPECT_NEAR(e.T, 0.498133, 5e-7);
  EXPECT_NEAR(std::abs(e.C_T), std::sqrt(e.T), 1e-15);

  EXPECT_THROW(closed_form_coefficients(morse_sr(2.0), 0.0), DomainError);
  EXPECT_THROW(closed_form_coefficients(eckart_sr(2.0), -1.0), DomainError);
  EXPECT_THROW(closed_form_coefficients(parabolic_unit(), std::nan("")), DomainError);
}

TEST(ClosedForm, ExtremeParametersStayFinite) {
  // T underflows gracefully to tiny values instead of NaN
  const auto m = closed_form_coefficients(morse_sr(400.0), morse_energy(1.0));
  EXPECT_TRUE(std::isfinite(m.T));
  EXPECT_GE(m.T, 0.0);
  EXPECT_NEAR(m.R, 1.0, 1e-12);
  const auto e = closed_form_coefficients(eckart_sr(1.0), eckart_energy(400.0));
  EXPECT_NEAR(e.T, 1.0, 1e-12);
  const auto p = closed_form_coefficients(parabolic_unit(), parabolic_energy(-400.0));
  EXPECT_NEAR(p.T, 1.0, 1e-15);
  EXPECT_EQ(closed_form_coefficients(parabolic_unit(), parabolic_energy(400.0)).R, 1.0);
}

TEST(CrossValidate, Examples) {
  for (double lambda : {-2.0, 0.0, 3.0})
    EXPECT_LE(cross_validate(parabolic_unit(), parabolic_energy(lambda)).delta, 1e-12);
  EXPECT_LE(cross_validate(morse_sr(4.0), morse_energy(1.0)).delta, 1e-10);
  EXPECT_LE(cross_validate(eckart_sr(1.0), eckart_energy(4.0)).delta, 1e-10);
  const auto cv = cross_validate(morse_sr(4.0), morse_energy(1.0));
  EXPECT_NEAR(cv.T_closed, 8.054231611671098e-05, 1e-17);
  EXPECT_NEAR(cross_validate(eckart_sr(4.0), eckart_energy(1.0)).T_closed, 7.386956221422279e-05, 1e-17);
  EXPECT_NEAR(cross_validate(eckart_sr(1.0), eckart_energy(4.0)).T_closed, 0.9999121821960795, 1e-15);
}

TEST(Properties, ConservationAcrossGrids) {
  for (const auto& spec : families())
    for (auto sg : signs) {
      for (double E : energy_grid(spec.V0())) {
        const auto p = f_matrix_properties(spec, E, {{sg}});
        EXPECT_LE(p.det_residual, 1e-10) << to_string(spec.kind()) << " E=" << E;
        EXPECT_TRUE(p.f12_at_least_one);
        EXPECT_TRUE(p.f22_bounded_by_f12);
        EXPECT_LE(p.diagonal_modulus_gap, 1e-10 * std::max(1.0, p.abs_F22));
        EXPECT_NEAR(p.abs_F12 * p.abs_F12 - p.abs_F22 * p.abs_F22, 1.0, 1e-10 * p.abs_F12 * p.abs_F12);
        EXPECT_GE(p.T, 0.0);
        EXPECT_LE(p.T, 1.0);
        EXPECT_GE(p.R, 0.0);
        EXPECT_LE(p.R, 1.0);
        const auto f = f_matrix_coefficients(spec, E, {{sg}});
        const auto c = closed_form_coefficients(spec, E);
        EXPECT_LE(f.unitarity_residual, 1e-10);
        EXPECT_LE(c.unitarity_residual, 1e-12);
      }
    }
}

TEST(Properties, ParabolicDiagonalHasEqualNotOppositeSign) {
  // F11 = +F22 here; the anti-equality is observed and reported, not asserted.
  const auto p = f_matrix_properties(parabolic_unit(), parabolic_energy(1.0));
  EXPECT_FALSE(p.diagonal_anti_equal);
  EXPECT_NEAR(p.sign_residual_diagonal, 2.0, 1e-12);
}

TEST(Properties, SignChoiceInvariance) {
  for (const auto& spec : families())
    for (double E : geometric(0.02 * spec.V0(), 6.0 * spec.V0(), 40)) {
      const auto up = f_matrix_coefficients(spec, E, {{SignChoice::upper}});
      const auto lo = f_matrix_coefficients(spec, E, {{SignChoice::lower}});
      EXPECT_NEAR(up.T, lo.T, 1e-12);
      EXPECT_NEAR(up.R, lo.R, 1e-12);
    }
}

TEST(Properties, LimitsAndMonotonicity) {
  EXPECT_NEAR(f_matrix_coefficients(parabolic_unit(), parabolic_energy(12.0)).T, 0.0, 1e-10);
  EXPECT_NEAR(f_matrix_coefficients(parabolic_unit(), parabolic_energy(-12.0)).T, 1.0, 1e-10);
  for (const auto& spec : {morse_sr(2.0), eckart_sr(2.0), BarrierSpec::morse(2.0, 0.7)}) {
    double prev = -1.0;
    const auto grid = geometric(1e-4 * spec.V0(), 50.0 * spec.V0(), 120);
    for (double E : grid) {
      const double T = f_matrix_coefficients(spec, E).T;
      // strict until T rounds to 1
      if (prev < 1.0 - 1e-12) EXPECT_GT(T, prev) << to_string(spec.kind()) << " E=" << E;
      else EXPECT_GE(T, prev) << to_string(spec.kind()) << " E=" << E;
      prev = T;
    }
    EXPECT_LT(f_matrix_coefficients(spec, grid.front()).T, 1e-2);
    EXPECT_GT(prev, 1.0 - 1e-6);
  }
}

TEST(Properties, EckartBelowThresholdUsesFluxSymmetricProducts) {
  // V0 = 0.75 ε, s = 0.5 i
  const auto spec = BarrierSpec::eckart(0.75 / 32.0, 1.0);
  for (double r : {0.2, 1.0, 3.0}) {
    const double E = eckart_energy(r);
    const auto F = evolution_matrix(spec, E);
    EXPECT_FALSE(F.flux_normalized);
    EXPECT_NEAR(std::abs(to_c(F.det()) - 1.0), 0.0, 1e-10);
    const auto f = scattering_from_f(F);
    const auto c = closed_form_coefficients(spec, E);
    EXPECT_NEAR(f.T, c.T, 1e-10);
    EXPECT_NEAR(f.R, c.R, 1e-10);
    EXPECT_LE(f.unitarity_residual, 1e-10);
  }
  EXPECT_NEAR(closed_form_coefficients(spec, eckart_energy(1.0)).T, 0.9137332616659456, 1e-14);
}

TEST(Properties, PrintedMorseVariantsAreNotUnimodular) {
  const auto spec = morse_sr(2.0);
  const double E = morse_energy(1.5);
  for (auto form : {MorseMinusForm::printed, MorseMinusForm::printed_corrected}) {
    FMatrixOptions opt;
    opt.a.morse_minus = form;
    EXPECT_THROW(evolution_matrix(spec, E, opt), ConservationError);
    opt.policy = CheckPolicy::warn;
    std::vector<std::string> warnings;
    EXPECT_NO_THROW(evolution_matrix(spec, E, opt, &warnings));
    EXPECT_FALSE(warnings.empty());
    EXPECT_GT(f_matrix_properties(spec, E, opt).det_residual, 1e-6);
  }
}

TEST(Properties, LargeParametersRemainConsistent) {
  // det F = 1 cancels terms of size 1/T, so its absolute residual scales as
  // rounding / T; the routes themselves must still agree.
  FMatrixOptions lenient;
  lenient.policy = CheckPolicy::warn;
  for (double s : {20.0, 50.0, 200.0, 500.0})
    for (double r : {0.5 * s, s, 1.5 * s}) {
      for (const auto& [spec, E] : {std::pair{morse_sr(s), morse_energy(r)},
                                    std::pair{eckart_sr(s), eckart_energy(r)}}) {
        const auto cv = cross_validate(spec, E, lenient);
        EXPECT_LE(cv.delta, 1e-10) << to_string(spec.kind()) << " " << s << " " << r;
        const auto p = f_matrix_properties(spec, E, lenient);
        EXPECT_TRUE(std::isfinite(p.T));
        if (std::isfinite(p.det_residual)) {
          EXPECT_LE(p.det_residual * std::max(p.T, 1e-300), 1e-15) << to_string(spec.kind()) << " " << s << " " << r;
        } else {
          // |F12|^2 beyond the double range: T has underflowed with it
          EXPECT_LT(p.T, 1e-300);
        }
      }
    }
}

TEST(MethodNames, Strings) {
  EXPECT_EQ(to_string(Method::closed_form), "closed_form");
  EXPECT_EQ(to_string(Method::f_matrix), "f_matrix");
  EXPECT_EQ(to_string(Method::oracle), "oracle");
}
