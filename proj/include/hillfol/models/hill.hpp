#pragma once

#include <array>
#include <random>

#include "hillfol/algebra/forms.hpp"
#include "hillfol/models/periodic_coeff.hpp"

namespace hillfol {

/// omega_H = -y dx + x dy + (y^2 + p(z) x^2) dz for a polynomial p(z).
inline OneForm hill_form(const Poly& p) {
  const VarList& v = vars_xyz();
  Poly pz = p.vars() == v ? p : p.embed(v);
  Poly x = Poly::variable(v, 0), y = Poly::variable(v, 1);
  return OneForm(v, {-y, x, y * y + pz * x * x});
}

/// X = y d/dx - p(z) x d/dy + d/dz.
inline VectorField hill_vector_field(const Poly& p) {
  const VarList& v = vars_xyz();
  Poly pz = p.vars() == v ? p : p.embed(v);
  Poly x = Poly::variable(v, 0), y = Poly::variable(v, 1);
  return {y, -(pz * x), Poly::constant(v, 1)};
}

struct SymbolicHill {
  OneForm form;
  VectorField field;

  Poly contraction() const { return contract(form, field); }
  ThreeForm defect() const { return integrability_defect(form); }
};

inline SymbolicHill build_hill(const Poly& p) { return {hill_form(p), hill_vector_field(p)}; }

/// Hill foliation with an analytic (callback) coefficient.
struct HillModel {
  PeriodicCoeff p;

  std::array<cplx, 3> form(cplx x, cplx y, cplx z) const { return {-y, x, y * y + p(z) * x * x}; }
  std::array<cplx, 3> field(cplx x, cplx y, cplx z) const { return {y, -p(z) * x, 1.0}; }

  cplx contraction(cplx x, cplx y, cplx z) const {
    auto w = form(x, y, z);
    auto f = field(x, y, z);
    return w[0] * f[0] + w[1] * f[1] + w[2] * f[2];
  }

  /// Coefficient of dx^dy^dz in omega ^ d omega, from the analytic partials
  /// of A = -y, B = x, C = y^2 + p(z) x^2.
  cplx defect(cplx x, cplx y, cplx z) const {
    cplx pv = p(z);
    cplx a = -y, b = x, c = y * y + pv * x * x;
    cplx a_y = -1.0, a_z = 0.0, b_x = 1.0, b_z = 0.0;
    cplx c_x = 2.0 * pv * x, c_y = 2.0 * y;
    return a * (c_y - b_z) - b * (c_x - a_z) + c * (b_x - a_y);
  }

  /// Largest |defect| and |omega(X)| over pseudo-random points with
  /// |x|, |y| <= 2 and z in the strip.
  std::pair<double, double> numeric_defects(int count, std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-2.0, 2.0), t(-1.0, 1.0);
    double worst_defect = 0, worst_contraction = 0;
    for (int i = 0; i < count; ++i) {
      cplx x(u(rng), u(rng)), y(u(rng), u(rng));
      cplx z(t(rng), t(rng));
      if (!p.in_strip(z)) continue;
      worst_defect = std::max(worst_defect, std::abs(defect(x, y, z)));
      worst_contraction = std::max(worst_contraction, std::abs(contraction(x, y, z)));
    }
    return {worst_defect, worst_contraction};
  }
};

inline HillModel build_hill(const PeriodicCoeff& p) { return {p}; }

}  // namespace hillfol
