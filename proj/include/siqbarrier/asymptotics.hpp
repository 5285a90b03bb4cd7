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

#include <array>
#include <functional>
#include <utility>

#include "siqbarrier/barriers.hpp"

namespace siqbarrier {

enum class Side { minus_infinity, plus_infinity };

/// Which asymptotic basis a side uses.
enum class BasisKind {
  plane_wave,     ///< e^{±ikx}/√k
  wkb_morse,      ///< e^{∓i(s/2)e^{x/b}} / √(e^{x/b})
  wkb_parabolic,  ///< e^{∓iϱ²}/√ϱ, ϱ = √(mΩ/2ħ) x
};

struct BasisFunctions {
  Side side;
  BasisKind kind;
  double k = 0.0;  ///< plane-wave wavenumber when kind == plane_wave
  std::function<double(double)> q;    ///< local wavenumber
  std::function<double(double)> chi;  ///< accumulated phase ∫q
};

struct AsymptoticComponents {
  Complex psi_minus_coeff;
  Complex psi_plus_coeff;
  BasisFunctions basis;
};

/// Coefficients of the ladder components Ψ- and Ψ+ on one side, with unit
/// normalization constants.  Throws DomainError for E <= 0 (Morse, Eckart) or
/// non-finite E.
AsymptoticComponents asymptotic_components(const BarrierSpec& spec, double E, SignChoice sign,
                                           Side side);

/// Variant of the Morse coefficient matrix on the left.  `continued` is the
/// analytic continuation of the right-hand columns and is the only variant
/// that yields a unimodular evolution matrix.  The two printed variants are
/// kept for the property report.
enum class MorseMinusForm { continued, printed, printed_corrected };

struct AMatrixOptions {
  SignChoice sign = SignChoice::upper;
  MorseMinusForm morse_minus = MorseMinusForm::continued;
};

/// 2x2 matrix of asymptotic coefficients.  Row i belongs to basis function
/// f_i, column j to solution Ψ_j.  An x-dependent factor |ϱ|^{+c} on row 1 and
/// |ϱ|^{-c} on row 2 is kept out of the entries, with c stored in
/// carried_phase_exponent (zero unless parabolic).
struct CoefficientMatrix {
  std::array<std::array<ComplexX, 2>, 2> entry{};
  ComplexX carried_phase_exponent{};

  ComplexX det() const;
  double log_modulus(int i, int j) const;
  double phase(int i, int j) const;

  /// Entry with the carried factor restored at |ϱ| = rho_abs > 0.
  ComplexX at(int i, int j, long double rho_abs) const;
};

CoefficientMatrix a_matrix(const BarrierSpec& spec, double E, Side side,
                           const AMatrixOptions& options = {});

/// Morse matrix M with A(-inf) = M A(+inf) for the continued form, so that
/// the evolution matrix is M itself.  Multiplying out M A(+inf) mixes terms
/// e^{±π(s+r)/4} apart and loses that many digits; M does not.
std::array<std::array<ComplexX, 2>, 2> morse_connection_matrix(const BarrierSpec& spec, double E);

/// Eckart C1 and C2 and their Schwarz conjugates C#(s) = conj(C(conj s)),
/// which coincide with plain conjugates for real s.
struct EckartConstants {
  ComplexX C1, C2, C1_sharp, C2_sharp;
};

EckartConstants eckart_constants(const BarrierSpec& spec, double E,
                                 SignChoice sign = SignChoice::upper);

/// (log C1, log C2) without exponentiating.
std::pair<ComplexX, ComplexX> eckart_log_constants(const BarrierSpec& spec, double E,
                                                   SignChoice sign = SignChoice::upper);

/// log(cosh z + iσ sinh z), σ = ±1, without overflow.
ComplexX log_cosh_plus_i_sinh(ComplexX z, int sigma);

}  // namespace siqbarrier
