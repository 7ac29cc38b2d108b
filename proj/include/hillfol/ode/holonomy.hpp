#pragma once

#include <algorithm>

#include "hillfol/ode/integrator.hpp"

namespace hillfol {

namespace detail {

/// dy/dt = i r0 e^{it} y / (r0^2 e^{2it} + y), optionally with the
/// variational equation v' = i r0 e^{it} x^2 / (x^2 + y)^2 v.
inline State holonomy_rhs(double r0, double t, const State& u) {
  cplx x = r0 * std::exp(I * t);
  cplx g = I * x;
  cplx den = x * x + u[0];
  if (std::abs(den) < 1e-12) throw DomainError("holonomy path meets the singular set x^2 + y = 0");
  State d(u.size());
  d[0] = g * u[0] / den;
  if (u.size() > 1) d[1] = g * x * x / (den * den) * u[1];
  return d;
}

}  // namespace detail

/// Holonomy of the separatrix y = 0 of the Hill fundamental form along
/// x = r0 e^{it}, 0 <= t <= 2 pi, on the transversal x = r0.
inline cplx holonomy(double r0, cplx y0, const ToleranceSpec& tol = ToleranceSpec::uniform(1e-12)) {
  if (!(r0 > 0)) throw ArgumentError("r0 must be positive");
  if (y0 == cplx(0.0)) return 0.0;
  State u(1);
  u << y0;
  Trajectory t;
  dopri_integrate([r0](double s, const State& v) { return detail::holonomy_rhs(r0, s, v); }, 0.0, 2 * pi, u, tol,
                  t);
  return t.back().y[0];
}

/// h'(y0) from the first variational equation.
inline cplx holonomy_derivative(double r0, cplx y0, const ToleranceSpec& tol = ToleranceSpec::uniform(1e-12)) {
  if (!(r0 > 0)) throw ArgumentError("r0 must be positive");
  State u(2);
  u << y0, 1.0;
  Trajectory t;
  dopri_integrate([r0](double s, const State& v) { return detail::holonomy_rhs(r0, s, v); }, 0.0, 2 * pi, u, tol,
                  t);
  return t.back().y[1];
}

struct PeriodicOrbit {
  cplx x0;
  double residual;
  int iterations;
  cplx multiplier;  // derivative of the time-2 pi map at x0
};

struct ShootResult {
  cplx value;
  cplx derivative;
};

/// Time-2 pi map of x' = i (x^2 + r e^{it}) with its derivative from the
/// variational equation v' = 2 i x v.
inline ShootResult time_2pi_map(double r, cplx x0, const ToleranceSpec& tol = ToleranceSpec::uniform(1e-13)) {
  State u(2);
  u << x0, 1.0;
  auto rhs = [r](double t, const State& v) -> State {
    State d(2);
    d[0] = I * (v[0] * v[0] + r * std::exp(I * t));
    d[1] = 2.0 * I * v[0] * v[1];
    return d;
  };
  Trajectory t;
  dopri_integrate(rhs, 0.0, 2 * pi, u, tol, t);
  return {t.back().y[0], t.back().y[1]};
}

/// Newton on S(x) = Phi(x) - x from `guess`.
inline PeriodicOrbit periodic_orbit(double r, cplx guess, const ToleranceSpec& tol = ToleranceSpec::uniform(1e-13),
                                    int max_iter = 50, double target = 1e-11) {
  cplx x = guess;
  for (int it = 0; it <= max_iter; ++it) {
    ShootResult s = time_2pi_map(r, x, tol);
    cplx res = s.value - x;
    if (std::abs(res) < target) return {x, std::abs(res), it, s.derivative};
    cplx slope = s.derivative - 1.0;
    if (std::abs(slope) < 1e-300) break;
    cplx step = res / slope;
    x -= step;
    if (!is_finite(x)) break;
  }
  throw ConvergenceError("Newton shooting did not converge within " + std::to_string(max_iter) +
                         " iterations (candidate bifurcation value r = " + std::to_string(r) + ")");
}

struct GridCandidate {
  cplx x0;
  double residual;
};

/// |Phi(x) - x| on a square grid over [-half, half]^2, best first. Points
/// whose solution blows up before 2 pi are skipped.
inline std::vector<GridCandidate> orbit_grid_scan(double r, int per_side = 9, double half = 2.0) {
  std::vector<GridCandidate> out;
  ToleranceSpec tol = ToleranceSpec::uniform(1e-8);
  tol.max_steps = 20000;
  for (int i = 0; i < per_side; ++i)
    for (int j = 0; j < per_side; ++j) {
      cplx x(-half + 2 * half * i / (per_side - 1), -half + 2 * half * j / (per_side - 1));
      try {
        ShootResult s = time_2pi_map(r, x, tol);
        double res = std::abs(s.value - x);
        if (std::isfinite(res)) out.push_back({x, res});
      } catch (const Error&) {
      }
    }
  std::stable_sort(out.begin(), out.end(),
                   [](const GridCandidate& a, const GridCandidate& b) { return a.residual < b.residual; });
  return out;
}

/// Tries grid candidates in order until Newton converges.
inline PeriodicOrbit periodic_orbit_from_scan(double r, const ToleranceSpec& tol = ToleranceSpec::uniform(1e-13)) {
  for (const auto& c : orbit_grid_scan(r)) {
    try {
      return periodic_orbit(r, c.x0, tol);
    } catch (const Error&) {
    }
  }
  throw ConvergenceError("no grid candidate converged to a periodic orbit");
}

}  // namespace hillfol
