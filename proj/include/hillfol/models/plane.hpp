#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>

#include "hillfol/algebra/parse.hpp"
#include "hillfol/algebra/forms.hpp"

namespace hillfol {

/// -y dx + (x^2 + f(y)) dy with f polynomial in y (given over x, y).
inline OneForm theta2_form(const Poly& f) {
  const VarList& v = vars_xy();
  Poly fy = f.vars() == v ? f : f.embed(v);
  if (fy.degree_in(0) > 0) throw ArgumentError("f must depend on y only");
  Poly x = Poly::variable(v, 0), y = Poly::variable(v, 1);
  return OneForm(v, {-y, x * x + fy});
}

/// The Hill fundamental form -y dx + (x^2 + y) dy.
inline OneForm omega2_form() { return theta2_form(Poly::variable(vars_xy(), 1)); }

/// A plane 1-form A dx + B dy evaluated numerically.
struct PlaneForm {
  std::string name;
  std::function<std::array<cplx, 2>(cplx, cplx)> coeffs;
  std::optional<OneForm> symbolic;

  /// Dual vector field (B, -A), tangent to the foliation.
  std::array<cplx, 2> dual(cplx x, cplx y) const {
    auto c = coeffs(x, y);
    return {c[1], -c[0]};
  }

  static PlaneForm from_form(const OneForm& w, std::string name = "form") {
    if (w.nvars() != 2) throw ArgumentError("plane forms live in two variables");
    PlaneForm p;
    p.name = std::move(name);
    p.symbolic = w;
    p.coeffs = [w](cplx x, cplx y) -> std::array<cplx, 2> { return {w[0]({x, y}), w[1]({x, y})}; };
    return p;
  }

  /// theta_2 with an analytic f(y).
  static PlaneForm theta2(std::function<cplx(cplx)> f, std::string name = "theta2") {
    PlaneForm p;
    p.name = std::move(name);
    p.coeffs = [f](cplx x, cplx y) -> std::array<cplx, 2> { return {-y, x * x + f(y)}; };
    return p;
  }
};

}  // namespace hillfol
