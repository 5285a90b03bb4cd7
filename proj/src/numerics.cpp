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

#include "siqbarrier/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "siqbarrier/errors.hpp"

namespace siqbarrier {
namespace {

// Stirling coefficients B_{2k} / (2k (2k-1)), k = 1..12.  At |z| >= 16 the
// first omitted term is below 1e-26 relative, which covers long double.
template <typename T>
constexpr std::array<T, 12> stirling_coefficients{
    T(1) / T(12),
    T(-1) / T(360),
    T(1) / T(1260),
    T(-1) / T(1680),
    T(1) / T(1188),
    T(-691) / T(360360),
    T(1) / T(156),
    T(-3617) / T(122400),
    T(43867) / T(244188),
    T(-174611) / T(125400),
    T(854513) / T(63756),
    T(-236364091) / T(1506960),
};

template <typename T>
constexpr T stirling_radius = T(16);

template <typename T>
std::complex<T> stirling(std::complex<T> z) {
  const T half_log_two_pi = T(0.918938533204672741780329736405617639861L);
  const std::complex<T> inv = T(1) / z;
  const std::complex<T> inv2 = inv * inv;
  std::complex<T> series{};
  for (auto it = stirling_coefficients<T>.rbegin(); it != stirling_coefficients<T>.rend(); ++it)
    series = series * inv2 + *it;
  series *= inv;
  return (z - T(0.5)) * std::log(z) - z + half_log_two_pi + series;
}

// log Γ(z) for Re z >= 1/2.
template <typename T>
std::complex<T> log_gamma_right(std::complex<T> z) {
  std::complex<T> shift_sum{};
  if (std::abs(z) < stirling_radius<T>) {
    const int n = static_cast<int>(std::ceil(stirling_radius<T> - z.real()));
    for (int j = 0; j < n; ++j) shift_sum += std::log(z + T(j));
    z += T(n);
  }
  return stirling(z) - shift_sum;
}

// log sin(πz) continued analytically through the closed upper half plane,
// anchored so that it is real on (0, 1).
template <typename T>
std::complex<T> log_sin_pi_upper(std::complex<T> z) {
  const T pi_t = std::numbers::pi_v<T>;
  const std::complex<T> i{0, 1};
  // sin(πz) = (i/2) e^{-iπz} (1 - e^{2πiz}); 1 - e^{2πiz} has Re > 0 for
  // Im z > 0, so its principal log is analytic there.  The shift by
  // round(Re z) keeps 1 - e^{2πiw} accurate near the poles.
  const std::complex<T> w = z - std::round(z.real());
  const std::complex<T> one_minus = -expm1(std::complex<T>(0, 2 * pi_t) * w);
  return i * (pi_t / 2) - std::numbers::ln2_v<T> - i * pi_t * z + std::log(one_minus);
}

template <typename T>
std::complex<T> log_gamma_upper(std::complex<T> z) {
  if (z.real() >= T(0.5)) return log_gamma_right(z);
  const T log_pi = T(1.14472988584940017414342735135305871164L);
  return log_pi - log_sin_pi_upper(z) - log_gamma_right(T(1) - z);
}

}  // namespace

template <std::floating_point T>
std::complex<T> log_gamma(std::complex<T> z) {
  if (z.imag() == 0 && z.real() <= 0 && z.real() == std::floor(z.real()))
    throw PoleError(static_cast<double>(z.real()));
  // Γ > 0 on the positive axis, so the principal value is exactly real there.
  if (z.imag() == 0 && z.real() > 0) return {std::lgamma(z.real()), T(0)};
  if constexpr (sizeof(T) < sizeof(long double)) {
    // Narrower types run in long double so the shift sum costs no digits.
    using X = long double;
    const std::complex<X> v = log_gamma(std::complex<X>(z.real(), z.imag()));
    return {static_cast<T>(v.real()), static_cast<T>(v.imag())};
  } else {
    if (std::signbit(z.imag())) return std::conj(log_gamma_upper(std::conj(z)));
    return log_gamma_upper(z);
  }
}

template std::complex<double> log_gamma(std::complex<double>);
template std::complex<long double> log_gamma(std::complex<long double>);

double quarter_reflection_check(double y) {
  const Complex lhs =
      std::exp(log_gamma(Complex(0.25, y)) + log_gamma(Complex(0.75, -y)));
  const Complex rhs =
      std::sqrt(2.0) * pi / Complex(std::cosh(pi * y), std::sinh(pi * y));
  return std::abs(lhs - rhs);
}

double stable_exp_ratio(std::span<const double> numerator_exponents,
                        std::span<const double> denominator_exponents) {
  if (denominator_exponents.empty())
    throw DomainError("stable_exp_ratio: empty denominator");
  if (numerator_exponents.empty()) return 0.0;
  auto scaled_sum = [](std::span<const double> exps, double& top) {
    top = *std::max_element(exps.begin(), exps.end());
    double acc = 0.0;
    for (double e : exps) acc += std::exp(e - top);
    return acc;
  };
  double top_num = 0.0;
  double top_den = 0.0;
  const double num = scaled_sum(numerator_exponents, top_num);
  const double den = scaled_sum(denominator_exponents, top_den);
  return std::exp(top_num - top_den) * (num / den);
}

double log_cosh(double x) {
  const double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

double log_sinh(double x) {
  if (!(x > 0.0)) throw DomainError("log_sinh: argument must be positive");
  if (x < 0.5) return std::log(std::sinh(x));
  return x + std::log1p(-std::exp(-2.0 * x)) - std::numbers::ln2;
}

}  // namespace siqbarrier
