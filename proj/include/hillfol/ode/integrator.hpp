#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hillfol/core/complex.hpp"
#include "hillfol/core/errors.hpp"

namespace hillfol {

struct ToleranceSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  long max_steps = 2000000;
  double min_step = 1e-13;

  void validate() const {
    if (!(abs_tol > 0 && abs_tol < 1) || !(rel_tol > 0 && rel_tol < 1))
      throw ArgumentError("tolerances must lie in (0, 1)");
    if (max_steps < 1) throw ArgumentError("max_steps must be at least 1");
    if (!(min_step > 0)) throw ArgumentError("min_step must be positive");
  }

  static ToleranceSpec uniform(double tol) {
    ToleranceSpec t;
    t.abs_tol = t.rel_tol = tol;
    return t;
  }
};

using State = Eigen::VectorXcd;

struct Sample {
  double s;
  State y;
  double err;  // scaled local error estimate of the step that produced it
};

struct Trajectory {
  std::vector<Sample> samples;
  ToleranceSpec tol;
  long accepted = 0;
  long rejected = 0;
  std::string status = "complete";

  bool complete() const { return status == "complete"; }
  const Sample& back() const { return samples.back(); }
  const Sample& front() const { return samples.front(); }
};

/// Reason to stop integrating at an accepted state, if any.
using StopPredicate = std::function<std::optional<std::string>(double, const State&)>;

namespace detail {

inline bool finite_state(const State& y) {
  for (Eigen::Index i = 0; i < y.size(); ++i)
    if (!is_finite(y[i])) return false;
  return true;
}

}  // namespace detail

/// Dormand-Prince 5(4) with PI step control for dy/ds = f(s, y), s0 -> s1
/// (s1 > s0). Accepted samples are appended to `out`; the first sample is
/// appended only when `out` is empty. Returns false when `stop` fired.
template <class Rhs>
bool dopri_integrate(Rhs&& f, double s0, double s1, State y, const ToleranceSpec& tol, Trajectory& out,
                     const StopPredicate& stop = {}) {
  tol.validate();
  if (!(s1 > s0)) throw ArgumentError("integration interval must be increasing");
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                          b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;

  if (out.samples.empty()) out.samples.push_back({s0, y, 0.0});
  out.tol = tol;
  double s = s0;
  double h = std::min(s1 - s0, 1e-3 * std::max(1.0, s1 - s0));
  double err_prev = 1e-4;
  State k1 = f(s, y);
  long steps = 0;
  while (s < s1) {
    if (++steps > tol.max_steps) throw ConvergenceError("maximum number of steps exceeded");
    bool last = false;
    if (s + h >= s1) {
      h = s1 - s;
      last = true;
    }
    State k2 = f(s + c2 * h, y + h * (a21 * k1));
    State k3 = f(s + c3 * h, y + h * (a31 * k1 + a32 * k2));
    State k4 = f(s + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    State k5 = f(s + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    State k6 = f(s + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    State ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    State k7 = f(s + h, ynew);
    State e = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    double acc = 0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      double sc = tol.abs_tol + tol.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      double r = std::abs(e[i]) / sc;
      acc += r * r;
    }
    double err = std::sqrt(acc / static_cast<double>(y.size()));
    if (!std::isfinite(err) || !detail::finite_state(ynew)) err = 1e10;
    if (err <= 1.0) {
      s = last ? s1 : s + h;
      y = std::move(ynew);
      k1 = std::move(k7);
      ++out.accepted;
      if (stop) {
        if (auto why = stop(s, y)) {
          out.status = "terminated: " + *why;
          return false;
        }
      }
      out.samples.push_back({s, y, err});
      double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.17) * std::pow(err_prev, 0.04);
      h *= std::clamp(fac, 0.2, 10.0);
      err_prev = std::max(err, 1e-4);
    } else {
      ++out.rejected;
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
    }
    if (h < tol.min_step && s < s1)
      throw ConvergenceError("step size underflow at s = " + std::to_string(s) + " (solution blows up)");
  }
  return true;
}

/// Piecewise-linear path in C parameterized by arc length.
class ComplexPath {
 public:
  explicit ComplexPath(std::vector<cplx> waypoints) : pts_(std::move(waypoints)) {
    if (pts_.size() < 2) throw ArgumentError("a path needs at least two waypoints");
    cum_.push_back(0.0);
    for (std::size_t i = 1; i < pts_.size(); ++i) {
      double len = std::abs(pts_[i] - pts_[i - 1]);
      if (len == 0.0) throw ArgumentError("consecutive path waypoints must differ");
      cum_.push_back(cum_.back() + len);
    }
  }
  static ComplexPath segment(cplx a, cplx b) { return ComplexPath({a, b}); }
  /// Segment from a to b split into n equal pieces.
  static ComplexPath uniform(cplx a, cplx b, int n) {
    if (n < 1) throw ArgumentError("uniform path needs at least one piece");
    std::vector<cplx> w;
    for (int i = 0; i <= n; ++i) w.push_back(a + (b - a) * (static_cast<double>(i) / n));
    return ComplexPath(std::move(w));
  }

  const std::vector<cplx>& waypoints() const { return pts_; }
  std::size_t pieces() const { return pts_.size() - 1; }
  double length() const { return cum_.back(); }
  double start_of(std::size_t piece) const { return cum_[piece]; }
  double end_of(std::size_t piece) const { return cum_[piece + 1]; }
  cplx direction(std::size_t piece) const {
    return (pts_[piece + 1] - pts_[piece]) / (cum_[piece + 1] - cum_[piece]);
  }
  cplx at(std::size_t piece, double s) const { return pts_[piece] + (s - cum_[piece]) * direction(piece); }
  cplx at(double s) const {
    std::size_t i = 0;
    while (i + 1 < pieces() && s > cum_[i + 1]) ++i;
    return at(i, s);
  }

 private:
  std::vector<cplx> pts_;
  std::vector<double> cum_;
};

/// Integrates dy/dz = g(z, y) along a path, one piece at a time.
template <class G>
Trajectory integrate_along(const ComplexPath& path, G&& g, State y0, const ToleranceSpec& tol,
                           const StopPredicate& stop = {}) {
  Trajectory traj;
  State y = std::move(y0);
  for (std::size_t i = 0; i < path.pieces(); ++i) {
    cplx dir = path.direction(i);
    auto rhs = [&](double s, const State& u) -> State { return dir * g(path.at(i, s), u); };
    if (!dopri_integrate(rhs, path.start_of(i), path.end_of(i), y, tol, traj, stop)) return traj;
    y = traj.back().y;
  }
  return traj;
}

/// CSV with columns s, Re/Im of each component, err.
inline void write_csv(const Trajectory& t, std::ostream& os, const std::vector<std::string>& names) {
  os << "s";
  for (const auto& n : names) os << ",re_" << n << ",im_" << n;
  os << ",err\n";
  os.precision(17);
  for (const auto& smp : t.samples) {
    os << smp.s;
    for (Eigen::Index i = 0; i < smp.y.size(); ++i) os << "," << smp.y[i].real() << "," << smp.y[i].imag();
    os << "," << smp.err << "\n";
  }
}

}  // namespace hillfol
