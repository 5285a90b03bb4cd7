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

#include "siqbarrier/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "siqbarrier/errors.hpp"
#include "siqbarrier/parallel.hpp"

namespace siqbarrier {
namespace {

constexpr Complex I{0.0, 1.0};

// Potential seen by the integrator: mirrored when the wave comes from the
// right, so the integration always runs from +x to -x.
struct Model {
  const BarrierSpec& spec;
  double E;
  double mirror;  // +1 or -1
  double c;       // 2m/ħ²

  Model(const BarrierSpec& s, double energy, Incidence inc)
      : spec(s),
        E(energy),
        mirror(inc == Incidence::from_left ? 1.0 : -1.0),
        c(2.0 * s.units().mass / (s.units().hbar * s.units().hbar)) {}

  // ψ'' = g ψ
  double g(double x) const { return c * (potential(spec, mirror * x) - E); }

  // K = -g and its first two derivatives.
  std::array<double, 3> K(double x) const {
    const auto p = potential_derivatives(spec, mirror * x);
    return {c * (E - p.value), -c * mirror * p.first, -c * p.second};
  }

  double quality(double x) const {
    const auto [k0, k1, k2] = K(x);
    if (!(k0 > 0.0)) return std::numeric_limits<double>::infinity();
    const double r = k1 / k0;
    return std::abs((5.0 / 16.0) * r * r - k2 / (4.0 * k0)) / k0;
  }
};

struct State {
  Complex psi;
  Complex dpsi;
};

// Segment-wise Numerov from x_from down to x_to.  Each segment gets a
// uniform step sized from the largest |g| sampled on it and is restarted
// from (ψ, ψ') with fourth-order start and end formulas.
State integrate(const Model& m, double x_from, double x_to, State s, double phase, double L,
                int level, long long& steps) {
  double x = x_from;
  while (x > x_to) {
    const double len = std::max(0.5 * L, 0.2 * std::abs(x));
    double xn = std::max(x - len, x_to);
    if (xn - x_to < 1e-3 * len) xn = x_to;
    double gmax = 0.0;
    constexpr int samples = 16;
    for (int j = 0; j <= samples; ++j)
      gmax = std::max(gmax, std::abs(m.g(x + (xn - x) * j / samples)));
    const double h0 = std::min(phase / std::sqrt(gmax), phase * L);
    const double base = std::ceil((x - xn) / h0);
    const double nd = std::ldexp(base, level);
    if (!(h0 > 1e-14 * L) || nd > 4e9)
      throw ConfigurationError(fmt::format("oracle: step underflow near x = {:.6g}", x));
    const long long n = static_cast<long long>(nd);
    const double h = (xn - x) / static_cast<double>(n);
    const double h2 = h * h;
    const auto u = [h2](double gv) { return 1.0 - h2 * gv / 12.0; };
    const auto w = [h2](double gv) { return 1.0 - h2 * gv / 6.0; };
    const auto N = [h2](double gv) { return 2.0 * (1.0 + 5.0 * h2 * gv / 12.0); };

    const double gm = m.g(x - h);
    double g0 = m.g(x);
    double g1 = m.g(x + h);
    Complex p0 = s.psi;
    Complex p1 = (N(g0) * s.psi * w(gm) + 2.0 * h * u(gm) * s.dpsi) / (u(g1) * w(gm) + u(gm) * w(g1));
    for (long long i = 1; i <= n; ++i) {
      const double g2 = m.g(x + static_cast<double>(i + 1) * h);
      const Complex p2 = (N(g1) * p1 - u(g0) * p0) / u(g2);
      if (i == n) {
        s.psi = p1;
        s.dpsi = (w(g2) * p2 - w(g0) * p0) / (2.0 * h);
      }
      p0 = p1;
      p1 = p2;
      g0 = g1;
      g1 = g2;
    }
    steps += n;
    x = xn;
  }
  return s;
}

void require_admissible(const BarrierSpec& spec, double E) {
  if (!std::isfinite(E)) throw DomainError("oracle: energy must be finite");
  if (spec.kind() != BarrierKind::parabolic && !(E > 0.0))
    throw DomainError(std::string("oracle: energy must be > 0 for the ") +
                      std::string(to_string(spec.kind())) + " barrier");
}

// Moves one end outward in half-length-scale increments until the quality
// bound holds; 'dir' is -1 for the left end and +1 for the right end.
double extend(const Model& m, double x, double dir, double increment, double max_width,
              double other_end, double threshold) {
  double q = m.quality(x);
  while (!(q <= threshold)) {
    x += dir * increment;
    if (std::abs(x - other_end) > max_width)
      throw PrecisionError(
          fmt::format("oracle: WKB quality {:.3g} above {:.3g} at window cap x = {:.6g}", q,
                      threshold, x),
          x, q);
    q = m.quality(x);
  }
  return x;
}

}  // namespace

void OracleConfig::validate() const {
  if (x_left && x_right && !(*x_left < *x_right))
    throw ConfigurationError("oracle: x_left must be < x_right");
  if ((x_left && !std::isfinite(*x_left)) || (x_right && !std::isfinite(*x_right)))
    throw ConfigurationError("oracle: window ends must be finite");
  if (!(max_step_phase > 0.0) || !(max_step_phase < 1.0))
    throw ConfigurationError("oracle: max_step_phase must lie in (0, 1)");
  if (!(wkb_quality_threshold > 0.0)) throw ConfigurationError("oracle: wkb_quality_threshold must be > 0");
  if (refinement_levels < 0 || refinement_levels > 8)
    throw ConfigurationError("oracle: refinement_levels must lie in [0, 8]");
  if (!(window_cap_factor >= 1.0)) throw ConfigurationError("oracle: window_cap_factor must be >= 1");
}

double wkb_quality(const BarrierSpec& spec, double E, double x) {
  return Model(spec, E, Incidence::from_left).quality(x);
}

std::pair<double, double> default_window(const BarrierSpec& spec, double E) {
  switch (spec.kind()) {
    case BarrierKind::parabolic: {
      const auto& p = std::get<Parabolic>(spec.shape());
      const double m = spec.units().mass;
      const double ell = spec.length_scale();
      const double xt = E < p.V0 ? std::sqrt(2.0 * (p.V0 - E) / (m * p.omega * p.omega)) : 0.0;
      const double half = std::max(16.0 * ell, 2.0 * xt);
      return {-half, half};
    }
    case BarrierKind::morse: {
      const double b = std::get<Morse>(spec.shape()).b;
      return {-20.0 * b, 3.0 * b};
    }
    case BarrierKind::eckart: {
      const double b = std::get<Eckart>(spec.shape()).b;
      return {-20.0 * b, 20.0 * b};
    }
  }
  return {-1.0, 1.0};
}

OracleResult solve(const BarrierSpec& spec, double E, const OracleConfig& cfg) {
  cfg.validate();
  require_admissible(spec, E);
  const Model model(spec, E, cfg.incidence);
  const double L = spec.length_scale();

  const auto [dl, dr] = default_window(spec, E);
  double xl = cfg.x_left.value_or(dl);
  double xr = cfg.x_right.value_or(dr);
  if (!(xl < xr)) throw ConfigurationError("oracle: empty window");
  if (cfg.incidence == Incidence::from_right) std::tie(xl, xr) = std::pair{-xr, -xl};

  if (cfg.auto_extend) {
    const double width0 = xr - xl;
    const double max_width = cfg.window_cap_factor * width0;
    xl = extend(model, xl, -1.0, 0.5 * L, max_width, xr, cfg.wkb_quality_threshold);
    xr = extend(model, xr, +1.0, 0.5 * L, max_width, xl, cfg.wkb_quality_threshold);
  }

  OracleResult out;
  out.quality_left = model.quality(xl);
  out.quality_right = model.quality(xr);
  if (!std::isfinite(out.quality_left) || !std::isfinite(out.quality_right))
    throw PrecisionError("oracle: a matching point lies in a classically forbidden region",
                         std::isfinite(out.quality_left) ? xr : xl,
                         std::numeric_limits<double>::infinity());

  // Outgoing unit-flux WKB wave on the transmitted side.
  const auto [kr, kr1, kr2] = model.K(xr);
  (void)kr2;
  const double qr = std::sqrt(kr);
  const State start{1.0 / std::sqrt(qr), 0.0};
  const State init{start.psi, (I * qr - kr1 / (4.0 * kr)) * start.psi};

  const auto [kl, kl1, kl2] = model.K(xl);
  (void)kl2;
  const double ql = std::sqrt(kl);
  const double fl = 1.0 / std::sqrt(ql);
  const Complex dfp = (I * ql - kl1 / (4.0 * kl)) * fl;   // f+'
  const Complex dfm = (-I * ql - kl1 / (4.0 * kl)) * fl;  // f-'

  double T = 0.0, R = 0.0;
  for (int level = 0; level <= cfg.refinement_levels; ++level) {
    const State s = integrate(model, xr, xl, init, cfg.max_step_phase, L, level, out.steps);
    // Wronskian of the pair is -2i.
    const Complex alpha = (s.psi * dfm - s.dpsi * fl) / (-2.0 * I);
    const Complex beta = (fl * s.dpsi - dfp * s.psi) / (-2.0 * I);
    const double a2 = std::norm(alpha);
    T = 1.0 / a2;
    R = std::norm(beta) / a2;
    out.level_T.push_back(T);
  }
  out.T = T;
  out.R = R;
  out.unitarity_residual = std::abs(T + R - 1.0);
  out.matching_points = cfg.incidence == Incidence::from_left ? std::pair{xl, xr} : std::pair{-xr, -xl};
  const std::size_t nl = out.level_T.size();
  out.error_estimate = out.quality_left + out.quality_right +
                       (nl >= 2 ? std::abs(out.level_T[nl - 1] - out.level_T[nl - 2]) : 0.0);
  // Deep below the Morse barrier top the left plane-wave region recedes
  // without bound; no relative accuracy is claimed there.
  if (spec.kind() == BarrierKind::morse && E < 1e-4 * spec.V0())
    out.error_estimate = std::max(out.error_estimate, T);
  return out;
}

std::vector<SweepEntry> sweep(const BarrierSpec& spec, std::span<const double> grid,
                              const OracleConfig& cfg, unsigned threads) {
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw DomainError("sweep: energy grid must be strictly increasing");
  cfg.validate();
  std::vector<SweepEntry> out(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    out[i].energy = grid[i];
    try {
      out[i].result = solve(spec, grid[i], cfg);
    } catch (const std::exception& e) {
      out[i].error = e.what();
    }
  });
  return out;
}

}  // namespace siqbarrier
