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

#include <complex>
#include <concepts>
#include <span>

namespace siqbarrier {

using Complex = std::complex<double>;

/// Extended-precision complex used by the evolution-matrix route, where
/// det F = 1 has to survive entries of size 1/T.
using ComplexX = std::complex<long double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

/// Principal branch of log Γ(z): analytic on C minus (-inf, 0], real on the
/// positive axis.  Re z >= 1/2 uses the Stirling series after an upward
/// recurrence shift; Re z < 1/2 uses the reflection formula evaluated in the
/// upper half plane.  Lower half plane values are conjugates of upper half
/// plane values, so log_gamma(conj z) == conj(log_gamma(z)) bit for bit.
///
/// Throws PoleError for z in {0, -1, -2, ...}.
template <std::floating_point T>
std::complex<T> log_gamma(std::complex<T> z);

extern template std::complex<double> log_gamma(std::complex<double>);
extern template std::complex<long double> log_gamma(std::complex<long double>);

/// |Γ(1/4 + iy) Γ(3/4 - iy) - √2 π / (cosh πy + i sinh πy)|.
double quarter_reflection_check(double y);

/// (Σ e^{num_i}) / (Σ e^{den_j}) with the largest exponent of each sum
/// factored out.  An empty numerator gives 0; an empty denominator throws
/// DomainError.
double stable_exp_ratio(std::span<const double> numerator_exponents,
                        std::span<const double> denominator_exponents);

/// log cosh x without overflow.
double log_cosh(double x);

/// log sinh x for x > 0 without overflow.
double log_sinh(double x);

/// e^z - 1 accurate for small |z|.
template <std::floating_point T>
std::complex<T> expm1(std::complex<T> z) {
  const T a = z.real();
  const T b = z.imag();
  const T half_sin = std::sin(b / 2);
  const T em1 = std::expm1(a);
  // e^a cos b - 1 = expm1(a) cos b - 2 sin^2(b/2)
  return {em1 * std::cos(b) - 2 * half_sin * half_sin, std::exp(a) * std::sin(b)};
}

}  // namespace siqbarrier
