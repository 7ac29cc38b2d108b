#pragma once

#include <functional>
#include <limits>
#include <string>

#include "json.hpp"

#include "hillfol/algebra/parse.hpp"
#include "hillfol/core/complex.hpp"
#include "hillfol/core/errors.hpp"

namespace hillfol {

using json = nlohmann::json;

/// Complex number from JSON: a number, a numeric string ("1/4"), or [re, im].
inline cplx json_to_complex(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_rational(j.get<std::string>()).get_d();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ArgumentError("expected a number, a rational string or [re, im], got " + j.dump());
}

inline json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

/// The Hill parameter p(z): analytic callback with its derivative, period
/// T, and the half-width of the band around the line R*T where p is
/// declared analytic. A zero period marks a non-periodic polynomial stand-in.
struct PeriodicCoeff {
  std::string name;
  std::function<cplx(cplx)> eval;
  std::function<cplx(cplx)> deriv;
  cplx period{0.0, 2 * pi};
  double strip = std::numeric_limits<double>::infinity();
  json spec;

  cplx operator()(cplx z) const { return eval(z); }

  /// Distance from z to the line through 0 spanned by the period.
  bool in_strip(cplx z) const {
    if (!std::isfinite(strip) || period == cplx(0.0)) return true;
    cplx dir = period / std::abs(period);
    return std::abs((z * std::conj(dir)).imag()) <= strip;
  }

  /// max |p(z+T) - p(z)| over the given points.
  double periodicity_defect(const std::vector<cplx>& points) const {
    double m = 0;
    for (cplx z : points) m = std::max(m, std::abs(eval(z + period) - eval(z)));
    return m;
  }

  static PeriodicCoeff constant(cplx c, cplx T = {2 * pi, 0.0}) {
    PeriodicCoeff p;
    p.name = "const";
    p.eval = [c](cplx) { return c; };
    p.deriv = [](cplx) { return cplx(0.0); };
    p.period = T;
    p.spec = {{"type", "const"}, {"c", complex_to_json(c)}, {"period", complex_to_json(T)}};
    return p;
  }

  /// p(z) = a + b e^z, period 2 pi i.
  static PeriodicCoeff affine_exp(cplx a, cplx b) {
    PeriodicCoeff p;
    p.name = "affine-exp";
    p.eval = [a, b](cplx z) { return a + b * std::exp(z); };
    p.deriv = [b](cplx z) { return b * std::exp(z); };
    p.period = {0.0, 2 * pi};
    p.spec = {{"type", "affine-exp"}, {"a", complex_to_json(a)}, {"b", complex_to_json(b)}};
    return p;
  }

  static PeriodicCoeff exponential() {
    PeriodicCoeff p = affine_exp(0.0, 1.0);
    p.name = "exp";
    p.spec = {{"type", "exp"}};
    return p;
  }

  /// p(z) = a + b cosh z, period 2 pi i; even in z.
  static PeriodicCoeff cosh_family(cplx a, cplx b) {
    PeriodicCoeff p;
    p.name = "cosh";
    p.eval = [a, b](cplx z) { return a + b * std::cosh(z); };
    p.deriv = [b](cplx z) { return b * std::sinh(z); };
    p.period = {0.0, 2 * pi};
    p.spec = {{"type", "cosh"}, {"a", complex_to_json(a)}, {"b", complex_to_json(b)}};
    return p;
  }

  /// p(z) = k^2 e^{2z} - r^2, for which J_r(k e^z) and Y_r(k e^z) are solutions.
  static PeriodicCoeff bessel_hill(cplx r, cplx k) {
    PeriodicCoeff p;
    p.name = "bessel-hill";
    p.eval = [r, k](cplx z) { return k * k * std::exp(2.0 * z) - r * r; };
    p.deriv = [k](cplx z) { return 2.0 * k * k * std::exp(2.0 * z); };
    p.period = {0.0, pi};
    p.spec = {{"type", "bessel-hill"}, {"r", complex_to_json(r)}, {"k", complex_to_json(k)}};
    return p;
  }

  /// Polynomial p(z) given over the single variable z; not periodic.
  static PeriodicCoeff polynomial(const Poly& pz) {
    if (pz.nvars() != 1) throw ArgumentError("polynomial p must be in the single variable z");
    PeriodicCoeff p;
    p.name = "poly";
    Poly dp = pz.derivative(0);
    p.eval = [pz](cplx z) { return pz({z}); };
    p.deriv = [dp](cplx z) { return dp({z}); };
    p.period = 0.0;
    p.spec = {{"type", "poly"}, {"expr", pz.pretty()}};
    return p;
  }

  static PeriodicCoeff from_json(const json& j) {
    if (!j.is_object() || !j.contains("type")) throw ArgumentError("p-spec must be an object with a \"type\"");
    std::string t = j["type"].get<std::string>();
    auto get = [&](const char* key, cplx dflt) { return j.contains(key) ? json_to_complex(j[key]) : dflt; };
    if (t == "const") return constant(get("c", 0.0), get("period", cplx(2 * pi, 0.0)));
    if (t == "exp") return exponential();
    if (t == "affine-exp") return affine_exp(get("a", 0.0), get("b", 1.0));
    if (t == "cosh") return cosh_family(get("a", 0.0), get("b", 1.0));
    if (t == "bessel-hill") return bessel_hill(get("r", 0.0), get("k", 1.0));
    if (t == "poly") {
      if (!j.contains("expr")) throw ArgumentError("poly p-spec needs \"expr\"");
      return polynomial(parse_poly(j["expr"].get<std::string>(), VarList{"z"}));
    }
    throw ArgumentError("unknown p-spec type '" + t + "'");
  }
};

}  // namespace hillfol
