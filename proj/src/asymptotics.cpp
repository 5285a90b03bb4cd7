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

#include "siqbarrier/asymptotics.hpp"

#include <cmath>

#include "siqbarrier/errors.hpp"

namespace siqbarrier {
namespace {

using LD = long double;
constexpr ComplexX iX{0.0L, 1.0L};
constexpr LD piX = 3.141592653589793238462643383279502884L;

ComplexX lg(ComplexX z) { return log_gamma(z); }

// e^{iπ t}
ComplexX cis_pi(LD t) { return std::polar(1.0L, piX * t); }

void require_admissible(const BarrierSpec& spec, double E) {
  if (!std::isfinite(E)) throw DomainError("energy must be finite");
  if (spec.kind() != BarrierKind::parabolic && !(E > 0.0))
    throw DomainError(std::string("energy must be > 0 for the ") +
                      std::string(to_string(spec.kind())) + " barrier");
}

struct MorseSR {
  LD s, r;
};

MorseSR morse_sr(const BarrierSpec& spec, double E) {
  const auto p = dimensionless(spec, E);
  return {static_cast<LD>(p.s->real()), static_cast<LD>(*p.r)};
}

CoefficientMatrix parabolic_matrix(LD lambda, Side side) {
  CoefficientMatrix A;
  A.carried_phase_exponent = ComplexX(0.0L, lambda / 2);
  const LD q1 = piX * lambda / 4;
  if (side == Side::plus_infinity) {
    A.entry[0][0] = cis_pi(0.25L) * std::exp(-q1);
    A.entry[0][1] = cis_pi(-0.25L) * std::exp(-3 * q1);
    A.entry[1][0] = cis_pi(-0.25L) * std::exp(-q1);
    A.entry[1][1] = cis_pi(0.25L) * std::exp(-3 * q1);
  } else {
    const ComplexX cc = cis_pi(0.75L) + cis_pi(0.25L);
    A.entry[0][0] = cc * std::exp(q1) + cis_pi(-0.25L) * std::exp(-q1);
    A.entry[0][1] = cc * std::exp(-q1) + cis_pi(0.25L) * std::exp(-3 * q1);
    A.entry[1][0] = cc * std::exp(q1) - cis_pi(0.25L) * std::exp(-q1);
    A.entry[1][1] = cc * std::exp(-q1) - cis_pi(-0.25L) * std::exp(-3 * q1);
  }
  return A;
}

CoefficientMatrix morse_plus(LD s, LD r) {
  CoefficientMatrix A;
  A.entry[0][0] = cis_pi(0.25L) * std::exp(-piX / 4 * (s + r));
  A.entry[0][1] = cis_pi(-0.25L) * std::exp(-piX / 4 * (s - r));
  A.entry[1][0] = cis_pi(-0.25L) * std::exp(piX / 4 * (s - r));
  A.entry[1][1] = cis_pi(0.25L) * std::exp(piX / 4 * (s + r));
  return A;
}

// Left-hand matrix obtained by continuing each right-hand column through the
// exact solution.  The solution that is purely outgoing on the right,
// u ~ N f2, reads (a f1 + c f2) on the left; its conjugate covers f1.  The
// common factor i fixes the left basis phase so that det F = 1.
std::array<std::array<ComplexX, 2>, 2> morse_connection(LD s, LD r) {
  const ComplexX ir{0.0L, r};
  const LD pre = std::log(r) / 2 + piX * s / 4;
  const ComplexX log_a = pre + ComplexX(0.0L, -piX / 4) + lg(-ir) + ir / 2.0L * std::log(s) +
                         piX * r / 4 - lg(ComplexX(0.5L, (s - r) / 2));
  const ComplexX log_c = pre + ComplexX(0.0L, -piX / 4) + lg(ir) - ir / 2.0L * std::log(s) -
                         piX * r / 4 - lg(ComplexX(0.5L, (s + r) / 2));
  const ComplexX a = std::exp(log_a);
  const ComplexX c = std::exp(log_c);
  return {{{iX * std::conj(c), iX * a}, {iX * std::conj(a), iX * c}}};
}

CoefficientMatrix morse_minus_continued(LD s, LD r) {
  const auto M = morse_connection(s, r);
  const CoefficientMatrix P = morse_plus(s, r);
  CoefficientMatrix A;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      A.entry[i][j] = M[i][0] * P.entry[0][j] + M[i][1] * P.entry[1][j];
  return A;
}

CoefficientMatrix morse_minus_printed(LD s, LD r, bool corrected) {
  const auto G = [&](int a, int b) {
    return std::exp(lg(ComplexX(0.5L, (a * s + b * r) / 2)));
  };
  const ComplexX ir{0.0L, r};
  const ComplexX gp = std::sqrt(r) * std::exp(lg(ir));
  const ComplexX gm = std::sqrt(r) * std::exp(lg(-ir));
  CoefficientMatrix A;
  A.entry[0][0] = (cis_pi(0.75L) * std::exp(-piX * r / 2) / G(1, 1) +
                   cis_pi(0.25L) * std::exp(piX * s / 2) / G(1, -1)) * gp;
  A.entry[0][1] = (cis_pi(0.25L) / G(1, 1) +
                   cis_pi(0.75L) * std::exp(piX / 2 * (s + r)) / G(1, -1)) * gm;
  A.entry[1][0] = (cis_pi(0.25L) * std::exp(piX / 2 * (s - r)) / G(-1, -1) +
                   cis_pi(0.75L) / G(-1, 1)) * gp;
  A.entry[1][1] = (cis_pi(0.25L) * std::exp(piX * r / 2) / G(-1, -1) +
                   cis_pi(0.75L) * std::exp(piX * s / 2) / (corrected ? G(-1, 1) : G(-1, -1))) *
                  gm;
  return A;
}

// log C1, log C2 at a (possibly complex) s.
std::pair<ComplexX, ComplexX> eckart_log_c(ComplexX s, LD r, LD sg) {
  const ComplexX ir{0.0L, r};
  const ComplexX is = iX * s;
  const ComplexX x = piX / 4 * (r + sg * s);
  const LD log_root2pi = std::log(std::sqrt(2.0L) * piX);
  const ComplexX log_c1 = log_root2pi - log_cosh_plus_i_sinh(x, +1) -
                          (lg(1.0L + ir / 2.0L) + lg(0.25L + sg * is / 4.0L - ir / 4.0L) +
                           lg(0.25L - sg * is / 4.0L - ir / 4.0L));
  const ComplexX log_c2 = log_root2pi + lg(ir / 2.0L) - log_cosh_plus_i_sinh(x, -1) -
                          (lg(0.75L - sg * is / 4.0L + ir / 4.0L) +
                           lg(0.75L + sg * is / 4.0L + ir / 4.0L));
  return {log_c1, log_c2};
}

std::pair<ComplexX, ComplexX> eckart_c(ComplexX s, LD r, LD sg) {
  const auto [l1, l2] = eckart_log_c(s, r, sg);
  return {std::exp(l1), std::exp(l2)};
}

}  // namespace

ComplexX log_cosh_plus_i_sinh(ComplexX z, int sigma) {
  const LD sg = sigma >= 0 ? 1.0L : -1.0L;
  // cosh z + iσ sinh z = ((1+iσ) e^z + (1-iσ) e^{-z}) / 2
  if (z.real() >= 0)
    return z + std::log(ComplexX(0.5L, sg / 2)) +
           std::log(1.0L - sg * iX * std::exp(-2.0L * z));
  return -z + std::log(ComplexX(0.5L, -sg / 2)) + std::log(1.0L + sg * iX * std::exp(2.0L * z));
}

ComplexX CoefficientMatrix::det() const {
  return entry[0][0] * entry[1][1] - entry[0][1] * entry[1][0];
}

double CoefficientMatrix::log_modulus(int i, int j) const {
  return static_cast<double>(std::log(std::abs(entry.at(i).at(j))));
}

double CoefficientMatrix::phase(int i, int j) const {
  return static_cast<double>(std::arg(entry.at(i).at(j)));
}

ComplexX CoefficientMatrix::at(int i, int j, long double rho_abs) const {
  if (!(rho_abs > 0)) throw DomainError("CoefficientMatrix::at: |rho| must be > 0");
  const LD row_sign = i == 0 ? 1.0L : -1.0L;
  return entry.at(i).at(j) * std::exp(row_sign * carried_phase_exponent * std::log(rho_abs));
}

std::array<std::array<ComplexX, 2>, 2> morse_connection_matrix(const BarrierSpec& spec, double E) {
  if (spec.kind() != BarrierKind::morse) throw DomainError("morse_connection_matrix: not a Morse barrier");
  require_admissible(spec, E);
  const auto [s, r] = morse_sr(spec, E);
  return morse_connection(s, r);
}

EckartConstants eckart_constants(const BarrierSpec& spec, double E, SignChoice sign) {
  if (spec.kind() != BarrierKind::eckart) throw DomainError("eckart_constants: not an Eckart barrier");
  require_admissible(spec, E);
  const auto p = dimensionless(spec, E);
  const ComplexX s(p.s->real(), p.s->imag());
  const LD r = *p.r;
  const LD sg = sign_of(sign);
  const auto [c1, c2] = eckart_c(s, r, sg);
  const auto [d1, d2] = eckart_c(std::conj(s), r, sg);
  return {c1, c2, std::conj(d1), std::conj(d2)};
}

std::pair<ComplexX, ComplexX> eckart_log_constants(const BarrierSpec& spec, double E, SignChoice sign) {
  if (spec.kind() != BarrierKind::eckart) throw DomainError("eckart_log_constants: not an Eckart barrier");
  require_admissible(spec, E);
  const auto p = dimensionless(spec, E);
  return eckart_log_c(ComplexX(p.s->real(), p.s->imag()), *p.r, sign_of(sign));
}

CoefficientMatrix a_matrix(const BarrierSpec& spec, double E, Side side,
                           const AMatrixOptions& options) {
  require_admissible(spec, E);
  switch (spec.kind()) {
    case BarrierKind::parabolic:
      return parabolic_matrix(static_cast<LD>(*dimensionless(spec, E).lambda), side);
    case BarrierKind::morse: {
      const auto [s, r] = morse_sr(spec, E);
      if (side == Side::plus_infinity) return morse_plus(s, r);
      switch (options.morse_minus) {
        case MorseMinusForm::continued: return morse_minus_continued(s, r);
        case MorseMinusForm::printed: return morse_minus_printed(s, r, false);
        case MorseMinusForm::printed_corrected: return morse_minus_printed(s, r, true);
      }
      break;
    }
    case BarrierKind::eckart: {
      const auto C = eckart_constants(spec, E, options.sign);
      CoefficientMatrix A;
      if (side == Side::plus_infinity) {
        A.entry = {{{C.C1, C.C2_sharp}, {C.C1_sharp, -C.C2}}};
      } else {
        A.entry = {{{C.C1, -C.C2_sharp}, {-C.C1_sharp, -C.C2}}};
      }
      return A;
    }
  }
  throw DomainError("a_matrix: unknown barrier");
}

AsymptoticComponents asymptotic_components(const BarrierSpec& spec, double E, SignChoice sign,
                                           Side side) {
  require_admissible(spec, E);
  const LD sg = sign_of(sign);
  const auto p = dimensionless(spec, E);
  const auto [hbar, m] = spec.units();
  AsymptoticComponents out;
  out.basis.side = side;
  ComplexX log_minus{}, log_plus{};

  const auto plane_wave = [&] {
    const double k = *p.k;
    out.basis.kind = BasisKind::plane_wave;
    out.basis.k = k;
    out.basis.q = [k](double) { return k; };
    out.basis.chi = [k](double x) { return k * x; };
  };

  switch (spec.kind()) {
    case BarrierKind::parabolic: {
      const LD lambda = *p.lambda;
      const double omega = std::get<Parabolic>(spec.shape()).omega;
      out.basis.kind = BasisKind::wkb_parabolic;
      out.basis.q = [=](double x) { return m * omega * std::abs(x) / hbar; };
      out.basis.chi = [=](double x) { return m * omega * x * x / (2.0 * hbar); };
      // Principal branch of (±i)^{-1/2 ± iλ/2}; on the left the power of ϱ
      // picks up e^{∓πλ/2} from ϱ = |ϱ| e^{iπ}.
      log_minus = ComplexX(-piX * lambda / 4, -sg * piX / 4);
      log_plus = ComplexX(piX * lambda / 4, -sg * piX / 4);
      if (side == Side::minus_infinity) {
        log_minus -= sg * piX * lambda / 2;
        log_plus += sg * piX * lambda / 2;
      }
      break;
    }
    case BarrierKind::morse: {
      const LD s = p.s->real();
      const LD r = *p.r;
      if (side == Side::plus_infinity) {
        const double b = std::get<Morse>(spec.shape()).b;
        const double sd = static_cast<double>(s);
        out.basis.kind = BasisKind::wkb_morse;
        out.basis.q = [=](double x) { return sd * std::exp(x / b) / (2.0 * b); };
        out.basis.chi = [=](double x) { return sd * std::exp(x / b) / 2.0; };
        log_minus = ComplexX(-piX / 4 * (s + sg * r), -sg * piX / 4);
        log_plus = ComplexX(piX / 4 * (s + sg * r), -sg * piX / 4);
      } else {
        plane_wave();
        log_minus = std::log(r) / 2 + lg(ComplexX(0.0L, sg * r)) -
                    lg(ComplexX(0.5L, sg * (s + r) / 2));
        log_plus = -log_minus;
      }
      break;
    }
    case BarrierKind::eckart: {
      plane_wave();
      const ComplexX s(p.s->real(), p.s->imag());
      const ComplexX is = iX * s;
      const ComplexX ir{0.0L, static_cast<LD>(*p.r)};
      const ComplexX g34 = lg(0.75L + sg * (is + ir) / 4.0L);
      const ComplexX g14 = lg(0.25L + sg * (is - ir) / 4.0L);
      log_minus = g34 - lg(1.0L + sg * ir / 2.0L) - g14;
      log_plus = lg(sg * ir / 2.0L) + g14 - g34;
      break;
    }
  }
  const ComplexX cm = std::exp(log_minus);
  const ComplexX cp = std::exp(log_plus);
  out.psi_minus_coeff = Complex(static_cast<double>(cm.real()), static_cast<double>(cm.imag()));
  out.psi_plus_coeff = Complex(static_cast<double>(cp.real()), static_cast<double>(cp.imag()));
  return out;
}

}  // namespace siqbarrier
