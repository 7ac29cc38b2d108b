#pragma once

#include <array>
#include <functional>

#include "hillfol/algebra/forms.hpp"
#include "hillfol/models/first_integral.hpp"
#include "hillfol/models/hill.hpp"
#include "hillfol/special/bessel.hpp"

namespace hillfol {

namespace detail {

/// Principal x^{n/2}: an integer power when n is even.
inline cplx half_power(cplx x, int n) {
  cplx r = std::pow(x, n / 2);
  if (n % 2) r *= std::sqrt(x);
  return r;
}

/// (2 X Y0(2s) - 2 s Y1(2s)) / (X J0(2s) - s J1(2s)), the common shape of
/// F, F_n and G_j.
inline Quotient bessel_ratio(cplx X, cplx s) {
  cplx w = 2.0 * s;
  return {2.0 * X * bessel_y(0, w) - 2.0 * s * bessel_y(1, w), X * bessel_j(0, w) - s * bessel_j(1, w)};
}

}  // namespace detail

/// F(x, y) for the Hill fundamental form, principal branch of sqrt(y).
inline FirstIntegral bessel_first_integral_2d() {
  return FirstIntegral(
      "F", 2,
      [](FirstIntegral::Point p) { return detail::bessel_ratio(p[0], std::sqrt(p[1])); },
      [](FirstIntegral::Point p) { return std::vector<cplx>{p[1]}; });
}

/// First integral of the p = e^z Hill foliation, F(-y/x, e^z) with sqrt(e^z)
/// continued as e^{z/2}:
/// (2y Y0(2e^{z/2}) + 2x e^{z/2} Y1(2e^{z/2})) / (y J0(2e^{z/2}) + x e^{z/2} J1(2e^{z/2})).
inline FirstIntegral bessel_first_integral_3d() {
  return FirstIntegral(
      "H", 3,
      [](FirstIntegral::Point p) {
        cplx x = p[0], y = p[1], s = std::exp(p[2] / 2.0), w = 2.0 * s;
        return Quotient{2.0 * y * bessel_y(0, w) + 2.0 * x * s * bessel_y(1, w),
                        y * bessel_j(0, w) + x * s * bessel_j(1, w)};
      },
      [](FirstIntegral::Point p) { return std::vector<cplx>{2.0 * std::exp(p[2] / 2.0)}; });
}

/// F(y/x, e^z) exactly as composed with (y/x, e^z); kept to measure that it
/// is not constant along the p = e^z Hill field.
inline FirstIntegral bessel_first_integral_3d_unsigned() {
  return FirstIntegral(
      "H(y/x)", 3,
      [](FirstIntegral::Point p) {
        cplx x = p[0], y = p[1], s = std::exp(p[2] / 2.0), w = 2.0 * s;
        return Quotient{2.0 * y * bessel_y(0, w) - 2.0 * x * s * bessel_y(1, w),
                        y * bessel_j(0, w) - x * s * bessel_j(1, w)};
      },
      [](FirstIntegral::Point p) { return std::vector<cplx>{2.0 * std::exp(p[2] / 2.0)}; });
}

/// A solution u of u'' + p u = 0 as z -> (u(z), u'(z)).
using HillSolution = std::function<std::array<cplx, 2>(cplx)>;

/// (x w1' - y w1) / (x w2' - y w2) for independent solutions w1, w2.
inline FirstIntegral solution_pair_first_integral(HillSolution w1, HillSolution w2, cplx z_check = 0.0,
                                                  std::string name = "H_pair") {
  auto a = w1(z_check), b = w2(z_check);
  cplx wr = a[0] * b[1] - b[0] * a[1];
  double scale = std::abs(a[0] * b[1]) + std::abs(b[0] * a[1]);
  if (!(std::abs(wr) > 1e-10 * std::max(scale, 1e-300)))
    throw ArgumentError("dependent pair: Wronskian vanishes at z = " + std::to_string(z_check.real()));
  return FirstIntegral(std::move(name), 3, [w1, w2](FirstIntegral::Point p) {
    auto u = w1(p[2]), v = w2(p[2]);
    return Quotient{p[0] * u[1] - p[1] * u[0], p[0] * v[1] - p[1] * v[0]};
  });
}

/// Y_r(k e^z) and J_r(k e^z) with d/dz derivatives; they solve
/// u'' + (k^2 e^{2z} - r^2) u = 0.
inline HillSolution bessel_hill_solution(BesselKind kind, cplx r, cplx k) {
  return [kind, r, k](cplx z) -> std::array<cplx, 2> {
    cplx w = k * std::exp(z);
    return {bessel(kind, r, w), w * bessel_deriv(kind, r, w)};
  };
}

inline FirstIntegral bessel_hill_first_integral(cplx r, cplx k) {
  auto w1 = bessel_hill_solution(BesselKind::Y, r, k);
  auto w2 = bessel_hill_solution(BesselKind::J, r, k);
  return FirstIntegral(
      "H_bessel_hill", 3,
      [w1, w2](FirstIntegral::Point p) {
        auto u = w1(p[2]), v = w2(p[2]);
        return Quotient{p[0] * u[1] - p[1] * u[0], p[0] * v[1] - p[1] * v[0]};
      },
      [k](FirstIntegral::Point p) { return std::vector<cplx>{k * std::exp(p[2])}; });
}

/// z - x/y for p = 0 (x = x0 + y0 z, y = y0).
inline FirstIntegral rational_first_integral_p0() {
  return FirstIntegral("p0-rational", 3, [](FirstIntegral::Point p) {
    return Quotient{p[2] * p[1] - p[0], p[1]};
  });
}

/// z + atan(y/x) for p = 1, the integral of the closed form omega/(x^2+y^2).
inline FirstIntegral liouvillian_first_integral_p1() {
  return FirstIntegral("p1-liouvillian", 3, [](FirstIntegral::Point p) {
    return Quotient{p[0] * (p[2] + std::atan(p[1] / p[0])), p[0]};
  });
}

/// omega / g together with the numerator g d omega - dg ^ omega of d(omega/g).
struct ClosedWitness {
  OneForm numerator;
  Poly denominator;
  TwoForm residual;

  bool closed() const { return residual.is_zero(); }
};

inline ClosedWitness liouvillian_case_p1() {
  const VarList& v = vars_xyz();
  OneForm w = hill_form(Poly::constant(VarList{"z"}, 1));
  Poly x = Poly::variable(v, 0), y = Poly::variable(v, 1);
  Poly g = x * x + y * y;
  TwoForm res = g * exterior_derivative(w) - wedge(exterior_derivative(g), w);
  return {w, g, res};
}

/// F_n(x, y) for the divisor model after n blow-ups, s = x^{n/2} y^{1/2}.
inline FirstIntegral model_first_integral_F(int n) {
  if (n < 1) throw ArgumentError("F_n needs n >= 1");
  return FirstIntegral(
      "F_" + std::to_string(n), 2,
      [n](FirstIntegral::Point p) {
        return detail::bessel_ratio(p[0], detail::half_power(p[0], n) * std::sqrt(p[1]));
      },
      [n](FirstIntegral::Point p) {
        std::vector<cplx> c{p[1], detail::half_power(p[0], n) * std::sqrt(p[1])};
        if (n % 2) c.push_back(p[0]);
        return c;
      });
}

/// G_j(x, y) for the corner model, s = x^{j/2} y^{(j+1)/2}.
inline FirstIntegral model_first_integral_G(int j) {
  if (j < 1) throw ArgumentError("G_j needs j >= 1");
  return FirstIntegral(
      "G_" + std::to_string(j), 2,
      [j](FirstIntegral::Point p) {
        cplx s = detail::half_power(p[0], j) * detail::half_power(p[1], j + 1);
        return detail::bessel_ratio(p[0] * p[1], s);
      },
      [j](FirstIntegral::Point p) {
        std::vector<cplx> c{detail::half_power(p[0], j) * detail::half_power(p[1], j + 1)};
        if (j % 2) c.push_back(p[0]);
        else c.push_back(p[1]);
        return c;
      });
}

}  // namespace hillfol
