#pragma once

#include <variant>

#include "hillfol/models/first_integral.hpp"
#include "hillfol/models/periodic_coeff.hpp"
#include "hillfol/models/plane.hpp"
#include "hillfol/ode/integrator.hpp"

namespace hillfol {

namespace detail {

inline void require_in_strip(const PeriodicCoeff& p, const ComplexPath& path) {
  for (cplx w : path.waypoints())
    if (!p.in_strip(w)) throw DomainError("path leaves the analyticity strip of p at z = (" +
                                          std::to_string(w.real()) + ", " + std::to_string(w.imag()) + ")");
}

}  // namespace detail

/// u'' + p u = 0 as U' = A U, A = [[0, 1], [-p, 0]], along a path. U0 is a
/// 2-vector (u, u') or a column-major 2x2 matrix (4 entries).
inline Trajectory integrate_linear(const PeriodicCoeff& p, const ComplexPath& path, const State& u0,
                                   const ToleranceSpec& tol = {}) {
  if (u0.size() != 2 && u0.size() != 4) throw ArgumentError("initial data must have 2 or 4 entries");
  detail::require_in_strip(p, path);
  auto g = [&p](cplx z, const State& u) -> State {
    State d(u.size());
    cplx pz = p(z);
    for (Eigen::Index c = 0; c < u.size(); c += 2) {
      d[c] = u[c + 1];
      d[c + 1] = -pz * u[c];
    }
    return d;
  };
  return integrate_along(path, g, u0, tol);
}

inline Eigen::Matrix2cd to_matrix(const State& u) {
  Eigen::Matrix2cd m;
  m << u[0], u[2], u[1], u[3];
  return m;
}

/// Fundamental matrix at the end of the path, identity at its start.
inline Eigen::Matrix2cd fundamental_matrix(const PeriodicCoeff& p, const ComplexPath& path,
                                           const ToleranceSpec& tol = {}) {
  State id(4);
  id << 1.0, 0.0, 0.0, 1.0;
  return to_matrix(integrate_linear(p, path, id, tol).back().y);
}

/// Trajectory of the Hill vector field y d/dx - p x d/dy + d/dz parameterized
/// by z along the path; states are (x, y, z).
inline Trajectory hill_trajectory(const PeriodicCoeff& p, const ComplexPath& path, cplx x0, cplx y0,
                                  const ToleranceSpec& tol = {}) {
  State u(2);
  u << x0, y0;
  Trajectory t = integrate_linear(p, path, u, tol);
  for (auto& smp : t.samples) {
    State w(3);
    w << smp.y[0], smp.y[1], path.at(smp.s);
    smp.y = std::move(w);
  }
  return t;
}

/// Leaf of a plane form as dy/dx = -A/B with x running along a path.
struct AlongX {
  ComplexPath path;
};
/// Leaf as the dual field (B, -A) in real time t in [0, t_end].
struct DualField {
  double t_end;
};
/// Dual field normalized to unit speed in C^2; integrates arc length `length`.
struct ArcLength {
  double length;
};
using FlowStrategy = std::variant<AlongX, DualField, ArcLength>;

/// Integrates the leaf of a plane form through `start`. States are (x, y).
/// Approaching a zero of the dual field within `guard`, or a user stop
/// condition, terminates the trajectory with a flagged status.
inline Trajectory flow_plane_model(const PlaneForm& form, cplx x0, cplx y0, const FlowStrategy& strategy,
                                   const ToleranceSpec& tol = {}, const StopPredicate& extra_stop = {},
                                   double guard = default_guard) {
  auto d0 = form.dual(x0, y0);
  if (std::abs(d0[0]) + std::abs(d0[1]) < guard)
    throw DomainError("start point is a singular point of " + form.name);
  auto near_singular = [&](cplx x, cplx y) -> std::optional<std::string> {
    auto d = form.dual(x, y);
    if (std::abs(d[0]) + std::abs(d[1]) < guard) return std::string("approached a singular point");
    return std::nullopt;
  };
  if (const auto* ax = std::get_if<AlongX>(&strategy)) {
    if (std::abs(ax->path.waypoints().front() - x0) > 1e-14) throw ArgumentError("x-path must start at x0");
    if (std::abs(d0[0]) < guard) throw DomainError("leaf is vertical at the start point");
    const ComplexPath& path = ax->path;
    StopPredicate stop = [&](double s, const State& u) -> std::optional<std::string> {
      cplx x = path.at(s);
      if (std::abs(form.dual(x, u[0])[0]) < guard) return std::string("leaf turns vertical");
      if (auto w = near_singular(x, u[0])) return w;
      if (extra_stop) {
        State xy(2);
        xy << x, u[0];
        return extra_stop(s, xy);
      }
      return std::nullopt;
    };
    auto g = [&form](cplx x, const State& u) -> State {
      auto c = form.coeffs(x, u[0]);
      State d(1);
      d[0] = -c[0] / c[1];
      return d;
    };
    State u(1);
    u << y0;
    Trajectory t = integrate_along(path, g, u, tol, stop);
    for (auto& smp : t.samples) {
      State w(2);
      w << path.at(smp.s), smp.y[0];
      smp.y = std::move(w);
    }
    return t;
  }
  bool unit = std::holds_alternative<ArcLength>(strategy);
  double s_end = unit ? std::get<ArcLength>(strategy).length : std::get<DualField>(strategy).t_end;
  if (!(s_end > 0)) throw ArgumentError("flow length must be positive");
  auto rhs = [&form, unit](double, const State& u) -> State {
    auto d = form.dual(u[0], u[1]);
    State r(2);
    r << d[0], d[1];
    if (unit) r /= std::sqrt(std::norm(d[0]) + std::norm(d[1]));
    return r;
  };
  StopPredicate stop = [&](double s, const State& u) -> std::optional<std::string> {
    if (auto w = near_singular(u[0], u[1])) return w;
    if (extra_stop) return extra_stop(s, u);
    return std::nullopt;
  };
  State u(2);
  u << x0, y0;
  Trajectory t;
  dopri_integrate(rhs, 0.0, s_end, u, tol, t, stop);
  return t;
}

/// Stop condition that fires within `guard` of the integral's singular locus.
inline StopPredicate avoid_singular(const FirstIntegral& F, double guard = default_guard) {
  return [F, guard](double, const State& u) -> std::optional<std::string> {
    std::vector<cplx> p(u.data(), u.data() + std::min<Eigen::Index>(u.size(), F.arity()));
    return F.singular(p, guard);
  };
}

/// max over samples of |F(state) - F(state0)| / max(1, |F(state0)|).
inline double audit_first_integral(const FirstIntegral& F, const Trajectory& traj,
                                   double guard = default_guard) {
  if (traj.samples.empty()) throw ArgumentError("empty trajectory");
  auto point = [&](const Sample& smp) {
    if (smp.y.size() < F.arity()) throw ArgumentError("trajectory states have too few coordinates for " + F.name());
    return std::vector<cplx>(smp.y.data(), smp.y.data() + F.arity());
  };
  auto p0 = point(traj.front());
  if (auto why = F.singular(p0, guard)) throw DomainError(F.name() + " singular on the trajectory: " + *why);
  cplx f0 = F(p0);
  double scale = std::max(1.0, std::abs(f0));
  double drift = 0;
  for (const auto& smp : traj.samples) {
    auto p = point(smp);
    if (auto why = F.singular(p, guard)) throw DomainError(F.name() + " singular on the trajectory: " + *why);
    drift = std::max(drift, std::abs(F(p) - f0) / scale);
  }
  return drift;
}

}  // namespace hillfol
