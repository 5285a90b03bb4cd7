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

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <variant>

#include "siqbarrier/numerics.hpp"

namespace siqbarrier {

struct UnitSystem {
  double hbar = 1.0;
  double mass = 1.0;
};

/// Selects the upper or lower branch of the ± that runs through the ladder
/// construction (a1, α, μ, C1/C2).
enum class SignChoice { upper, lower };

inline double sign_of(SignChoice s) { return s == SignChoice::upper ? 1.0 : -1.0; }

/// V0 - m Ω² x² / 2
struct Parabolic {
  double V0;
  double omega;
};

/// V0 (2 e^{x/b} - e^{2x/b})
struct Morse {
  double V0;
  double b;
};

/// V0 sech²(x / 2b)
struct Eckart {
  double V0;
  double b;
};

enum class BarrierKind { parabolic, morse, eckart };

std::string_view to_string(BarrierKind kind);

class BarrierSpec {
 public:
  using Shape = std::variant<Parabolic, Morse, Eckart>;

  /// Throws DomainError unless every parameter is finite and strictly positive.
  BarrierSpec(Shape shape, UnitSystem units = {});

  static BarrierSpec parabolic(double V0, double omega, UnitSystem units = {});
  static BarrierSpec morse(double V0, double b, UnitSystem units = {});
  static BarrierSpec eckart(double V0, double b, UnitSystem units = {});

  const Shape& shape() const noexcept { return shape_; }
  const UnitSystem& units() const noexcept { return units_; }
  BarrierKind kind() const noexcept { return static_cast<BarrierKind>(shape_.index()); }
  double V0() const;

  /// Natural length of the family: b, or sqrt(ħ / mΩ) for the parabola.
  double length_scale() const;

  /// ħ / sqrt(2m), the coefficient of W' in V1,2 = W² ∓ (ħ/√2m) W'.
  double derivative_coefficient() const;

 private:
  Shape shape_;
  UnitSystem units_;
};

/// Dimensionless parameters of a barrier at energy E.  Family-specific
/// entries are empty where they do not apply.
struct DimensionlessParams {
  std::optional<double> epsilon0;  ///< ħΩ/2 (parabolic)
  std::optional<double> epsilon;   ///< ħ²/(8mb²) Morse, ħ²/(32mb²) Eckart
  std::optional<double> lambda;    ///< (V0 - E)/ε0 (parabolic)
  std::optional<Complex> s;        ///< √(V0/ε) Morse, √(V0/ε - 1) Eckart (imaginary below V0 = ε)
  std::optional<double> r;         ///< √(E/ε), E >= 0
  std::optional<double> k;         ///< √(2mE)/ħ, E >= 0
};

DimensionlessParams dimensionless(const BarrierSpec& spec, double E);

/// Family energy scale ε (Morse/Eckart) or ε0 (parabolic).
double energy_quantum(const BarrierSpec& spec);

/// V1(x).
double potential(const BarrierSpec& spec, double x);

struct PotentialSample {
  double value;
  double first;
  double second;
};

/// V1 and its first two x-derivatives, analytic per family.
PotentialSample potential_derivatives(const BarrierSpec& spec, double x);

/// a1 of the ladder chain (parabolic ±i Ω sqrt(m/2); Morse √ε(1 ∓ is);
/// Eckart √ε(-1 ± is)).
Complex first_parameter(const BarrierSpec& spec, SignChoice sign = SignChoice::upper);

/// W(x, a).  The Morse α = ±i√V0 is fixed by the sign choice and does not
/// move along the chain.
Complex superpotential(const BarrierSpec& spec, Complex a, double x,
                       SignChoice sign = SignChoice::upper);

/// dW/dx at (x, a).
Complex superpotential_derivative(const BarrierSpec& spec, Complex a, double x,
                                  SignChoice sign = SignChoice::upper);

/// A superpotential with its parameter chain a_{n+1} = step(a_n) and
/// remainders R(a_n).  zeta(x) is the per-step increment of W when the
/// chain shifts W linearly; it is identically zero for a constant chain.
struct ShapeInvariantFamily {
  std::function<Complex(double, Complex)> W;
  std::function<Complex(double, Complex)> dW;
  std::function<Complex(Complex)> param_step;
  std::function<Complex(Complex)> remainder;
  std::function<Complex(double)> zeta;
  Complex a1;
  double derivative_coefficient;  ///< ħ / sqrt(2m)
  double energy_scale;            ///< V0, used to scale residual contracts

  /// a_n for n >= 1.
  Complex parameter(int n) const;
};

ShapeInvariantFamily shape_invariant_family(const BarrierSpec& spec,
                                            SignChoice sign = SignChoice::upper);

struct FactorizationCheck {
  Complex residual_constant;  ///< mean of W² - (ħ/√2m) W' - V1 over the grid
  double max_deviation;       ///< max |Δ(x) - mean|
};

/// Requires at least two grid points (DomainError otherwise).
FactorizationCheck verify_factorization(const BarrierSpec& spec, std::span<const double> grid,
                                        SignChoice sign = SignChoice::upper);

/// max over grid of |V2(x, a1) - V1(x, a2) - R(a1)|.  Requires a non-empty grid.
double verify_shape_invariance(const ShapeInvariantFamily& family, std::span<const double> grid);

/// max over grid of |W(x, a_n) - W(x, a1) - (n-1) ζ(x)| with ζ = W(·, a2) - W(·, a1).
/// Requires n >= 2.
double verify_linear_shift(const ShapeInvariantFamily& family, int n, std::span<const double> grid);

/// Analytically continued ladder index at energy E.
struct ContinuationIndex {
  /// μ for parabolic and Morse (single-operator chain); 2ν for Eckart
  /// (paired chain).
  Complex index;
  bool paired;
  Complex remainder_sum;  ///< Σ_{k=1}^{index} R(a_k) re-evaluated on the continued chain
  Complex lambda;         ///< target Λ (E - V0 ∓ iε0, or E + a1²)
  double residual;        ///< |remainder_sum - lambda| / max(|lambda|, V0)
};

/// Throws DomainError for E <= 0 on Morse and Eckart.
ContinuationIndex mu_for_energy(const BarrierSpec& spec, double E,
                                SignChoice sign = SignChoice::upper);

}  // namespace siqbarrier
