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

#include "siqbarrier/barriers.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "siqbarrier/errors.hpp"

namespace siqbarrier {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive(double v, const char* what) {
  if (!(std::isfinite(v) && v > 0.0))
    throw DomainError(std::string("barrier parameter ") + what + " must be finite and > 0");
}

constexpr Complex I{0.0, 1.0};

double sech2(double u) {
  const double c = std::cosh(u);
  return 1.0 / (c * c);
}

}  // namespace

std::string_view to_string(BarrierKind kind) {
  switch (kind) {
    case BarrierKind::parabolic: return "parabolic";
    case BarrierKind::morse: return "morse";
    case BarrierKind::eckart: return "eckart";
  }
  return "unknown";
}

BarrierSpec::BarrierSpec(Shape shape, UnitSystem units) : shape_(shape), units_(units) {
  require_positive(units_.hbar, "hbar");
  require_positive(units_.mass, "mass");
  std::visit(overloaded{
                 [](const Parabolic& p) {
                   require_positive(p.V0, "V0");
                   require_positive(p.omega, "omega");
                 },
                 [](const Morse& m) {
                   require_positive(m.V0, "V0");
                   require_positive(m.b, "b");
                 },
                 [](const Eckart& e) {
                   require_positive(e.V0, "V0");
                   require_positive(e.b, "b");
                 },
             },
             shape_);
}

BarrierSpec BarrierSpec::parabolic(double V0, double omega, UnitSystem units) {
  return BarrierSpec(Parabolic{V0, omega}, units);
}
BarrierSpec BarrierSpec::morse(double V0, double b, UnitSystem units) {
  return BarrierSpec(Morse{V0, b}, units);
}
BarrierSpec BarrierSpec::eckart(double V0, double b, UnitSystem units) {
  return BarrierSpec(Eckart{V0, b}, units);
}

double BarrierSpec::V0() const {
  return std::visit([](const auto& s) { return s.V0; }, shape_);
}

double BarrierSpec::length_scale() const {
  return std::visit(overloaded{
                        [&](const Parabolic& p) {
                          return std::sqrt(units_.hbar / (units_.mass * p.omega));
                        },
                        [](const Morse& m) { return m.b; },
                        [](const Eckart& e) { return e.b; },
                    },
                    shape_);
}

double BarrierSpec::derivative_coefficient() const {
  return units_.hbar / std::sqrt(2.0 * units_.mass);
}

double energy_quantum(const BarrierSpec& spec) {
  const auto [hbar, m] = spec.units();
  return std::visit(overloaded{
                        [&](const Parabolic& p) { return 0.5 * hbar * p.omega; },
                        [&](const Morse& mo) { return hbar * hbar / (8.0 * m * mo.b * mo.b); },
                        [&](const Eckart& e) { return hbar * hbar / (32.0 * m * e.b * e.b); },
                    },
                    spec.shape());
}

DimensionlessParams dimensionless(const BarrierSpec& spec, double E) {
  DimensionlessParams out;
  const auto [hbar, m] = spec.units();
  const double eq = energy_quantum(spec);
  if (E >= 0.0) out.k = std::sqrt(2.0 * m * E) / hbar;
  switch (spec.kind()) {
    case BarrierKind::parabolic:
      out.epsilon0 = eq;
      out.lambda = (spec.V0() - E) / eq;
      break;
    case BarrierKind::morse:
      out.epsilon = eq;
      out.s = Complex(std::sqrt(spec.V0() / eq), 0.0);
      if (E >= 0.0) out.r = std::sqrt(E / eq);
      break;
    case BarrierKind::eckart:
      out.epsilon = eq;
      out.s = std::sqrt(Complex(spec.V0() / eq - 1.0, 0.0));
      if (E >= 0.0) out.r = std::sqrt(E / eq);
      break;
  }
  return out;
}

double potential(const BarrierSpec& spec, double x) {
  return potential_derivatives(spec, x).value;
}

PotentialSample potential_derivatives(const BarrierSpec& spec, double x) {
  const double m = spec.units().mass;
  return std::visit(
      overloaded{
          [&](const Parabolic& p) {
            const double w2 = m * p.omega * p.omega;
            return PotentialSample{p.V0 - 0.5 * w2 * x * x, -w2 * x, -w2};
          },
          [&](const Morse& mo) {
            const double y = std::exp(x / mo.b);
            const double inv_b = 1.0 / mo.b;
            return PotentialSample{mo.V0 * y * (2.0 - y), 2.0 * mo.V0 * inv_b * y * (1.0 - y),
                                   2.0 * mo.V0 * inv_b * inv_b * y * (1.0 - 2.0 * y)};
          },
          [&](const Eckart& e) {
            const double u = x / (2.0 * e.b);
            const double s2 = sech2(u);
            const double t = std::tanh(u);
            return PotentialSample{e.V0 * s2, -(e.V0 / e.b) * s2 * t,
                                   (e.V0 / (2.0 * e.b * e.b)) * s2 * (2.0 * t * t - s2)};
          },
      },
      spec.shape());
}

Complex first_parameter(const BarrierSpec& spec, SignChoice sign) {
  const double sg = sign_of(sign);
  const double m = spec.units().mass;
  switch (spec.kind()) {
    case BarrierKind::parabolic: {
      const auto& p = std::get<Parabolic>(spec.shape());
      return sg * I * std::sqrt(m / 2.0) * p.omega;
    }
    case BarrierKind::morse: {
      const double eps = energy_quantum(spec);
      const Complex s = *dimensionless(spec, 0.0).s;
      return std::sqrt(eps) * (1.0 - sg * I * s);
    }
    case BarrierKind::eckart: {
      const double eps = energy_quantum(spec);
      const Complex s = *dimensionless(spec, 0.0).s;
      return std::sqrt(eps) * (-1.0 + sg * I * s);
    }
  }
  return {};
}

Complex superpotential(const BarrierSpec& spec, Complex a, double x, SignChoice sign) {
  return std::visit(overloaded{
                        [&](const Parabolic&) { return a * x; },
                        [&](const Morse& mo) {
                          const Complex alpha = sign_of(sign) * I * std::sqrt(mo.V0);
                          return a + alpha * std::exp(x / mo.b);
                        },
                        [&](const Eckart& e) { return a * std::tanh(x / (2.0 * e.b)); },
                    },
                    spec.shape());
}

Complex superpotential_derivative(const BarrierSpec& spec, Complex a, double x, SignChoice sign) {
  return std::visit(overloaded{
                        [&](const Parabolic&) { return a; },
                        [&](const Morse& mo) {
                          const Complex alpha = sign_of(sign) * I * std::sqrt(mo.V0);
                          return alpha * std::exp(x / mo.b) / mo.b;
                        },
                        [&](const Eckart& e) {
                          return a * sech2(x / (2.0 * e.b)) / (2.0 * e.b);
                        },
                    },
                    spec.shape());
}

Complex ShapeInvariantFamily::parameter(int n) const {
  Complex a = a1;
  for (int i = 1; i < n; ++i) a = param_step(a);
  return a;
}

ShapeInvariantFamily shape_invariant_family(const BarrierSpec& spec, SignChoice sign) {
  ShapeInvariantFamily fam;
  fam.a1 = first_parameter(spec, sign);
  fam.derivative_coefficient = spec.derivative_coefficient();
  fam.energy_scale = spec.V0();
  fam.W = [spec, sign](double x, Complex a) { return superpotential(spec, a, x, sign); };
  fam.dW = [spec, sign](double x, Complex a) {
    return superpotential_derivative(spec, a, x, sign);
  };
  const double root_eps = std::sqrt(energy_quantum(spec));
  switch (spec.kind()) {
    case BarrierKind::parabolic: {
      const Complex R = sign_of(sign) * 2.0 * I * energy_quantum(spec);
      fam.param_step = [](Complex a) { return a; };
      fam.remainder = [R](Complex) { return R; };
      break;
    }
    case BarrierKind::morse:
      fam.param_step = [root_eps](Complex a) { return a + 2.0 * root_eps; };
      fam.remainder = [root_eps](Complex a) {
        const Complex next = a + 2.0 * root_eps;
        return a * a - next * next;
      };
      break;
    case BarrierKind::eckart:
      fam.param_step = [root_eps](Complex a) { return a - 2.0 * root_eps; };
      fam.remainder = [root_eps](Complex a) {
        const Complex next = a - 2.0 * root_eps;
        return a * a - next * next;
      };
      break;
  }
  fam.zeta = [W = fam.W, a1 = fam.a1, a2 = fam.param_step(fam.a1)](double x) {
    return W(x, a2) - W(x, a1);
  };
  return fam;
}

FactorizationCheck verify_factorization(const BarrierSpec& spec, std::span<const double> grid,
                                        SignChoice sign) {
  if (grid.size() < 2) throw DomainError("verify_factorization: need at least two grid points");
  const Complex a1 = first_parameter(spec, sign);
  const double c = spec.derivative_coefficient();
  std::vector<Complex> delta;
  delta.reserve(grid.size());
  Complex mean{};
  for (double x : grid) {
    const Complex W = superpotential(spec, a1, x, sign);
    const Complex dW = superpotential_derivative(spec, a1, x, sign);
    delta.push_back(W * W - c * dW - potential(spec, x));
    mean += delta.back();
  }
  mean /= static_cast<double>(grid.size());
  double dev = 0.0;
  for (const Complex& d : delta) dev = std::max(dev, std::abs(d - mean));
  return {mean, dev};
}

double verify_shape_invariance(const ShapeInvariantFamily& family, std::span<const double> grid) {
  if (grid.empty()) throw DomainError("verify_shape_invariance: empty grid");
  const double c = family.derivative_coefficient;
  const Complex a1 = family.a1;
  const Complex a2 = family.param_step(a1);
  const Complex R = family.remainder(a1);
  double worst = 0.0;
  for (double x : grid) {
    const Complex W1 = family.W(x, a1);
    const Complex W2 = family.W(x, a2);
    const Complex V2_at_a1 = W1 * W1 + c * family.dW(x, a1);
    const Complex V1_at_a2 = W2 * W2 - c * family.dW(x, a2);
    worst = std::max(worst, std::abs(V2_at_a1 - V1_at_a2 - R));
  }
  return worst;
}

double verify_linear_shift(const ShapeInvariantFamily& family, int n, std::span<const double> grid) {
  if (n < 2) throw DomainError("verify_linear_shift: n must be >= 2");
  const Complex an = family.parameter(n);
  double worst = 0.0;
  for (double x : grid) {
    const Complex lhs = family.W(x, an);
    const Complex rhs = family.W(x, family.a1) + static_cast<double>(n - 1) * family.zeta(x);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

ContinuationIndex mu_for_energy(const BarrierSpec& spec, double E, SignChoice sign) {
  if (!std::isfinite(E)) throw DomainError("mu_for_energy: energy must be finite");
  const double sg = sign_of(sign);
  ContinuationIndex out{};
  if (spec.kind() == BarrierKind::parabolic) {
    const double eps0 = energy_quantum(spec);
    const double lambda = (spec.V0() - E) / eps0;
    out.index = Complex(-0.5, sg * lambda / 2.0);
    out.paired = false;
    const Complex R = sg * 2.0 * I * eps0;
    out.remainder_sum = out.index * R;
    out.lambda = Complex(E - spec.V0(), -sg * eps0);
  } else {
    if (!(E > 0.0)) throw DomainError("mu_for_energy: E must be > 0 for Morse and Eckart");
    const double root_eps = std::sqrt(energy_quantum(spec));
    const Complex a1 = first_parameter(spec, sign);
    const Complex a_end = sg * I * std::sqrt(E);
    // Morse: a_{n+1} = a_n + 2√ε; Eckart: a_{n+1} = a_n - 2√ε.
    const double step = spec.kind() == BarrierKind::morse ? 2.0 * root_eps : -2.0 * root_eps;
    out.index = (a_end - a1) / step;
    out.paired = spec.kind() == BarrierKind::eckart;
    const Complex continued_end = a1 + step * out.index;
    out.remainder_sum = a1 * a1 - continued_end * continued_end;
    out.lambda = E + a1 * a1;
  }
  out.residual = std::abs(out.remainder_sum - out.lambda) / std::max(std::abs(out.lambda), spec.V0());
  return out;
}

}  // namespace siqbarrier
