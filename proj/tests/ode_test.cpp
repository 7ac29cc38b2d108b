#include <gtest/gtest.h>

#include <sstream>

#include "hillfol/models/integrals.hpp"
#include "hillfol/ode/flows.hpp"
#include "hillfol/ode/holonomy.hpp"

using namespace hillfol;

namespace {

State vec(cplx a, cplx b) {
  State s(2);
  s << a, b;
  return s;
}

FirstIntegral coordinate_x() {
  return FirstIntegral("x", 2, [](FirstIntegral::Point p) { return Quotient{p[0], 1.0}; });
}

const ToleranceSpec tight = ToleranceSpec::uniform(1e-10);

}  // namespace

TEST(Linear, ClosedForms) {
  auto zero = PeriodicCoeff::constant(0.0);
  auto one = PeriodicCoeff::constant(1.0);
  auto t0 = integrate_linear(zero, ComplexPath::segment(0.0, 1.0), vec(1.0, 0.0));
  EXPECT_LT(std::abs(t0.back().y[0] - 1.0), 1e-14);
  EXPECT_LT(std::abs(t0.back().y[1]), 1e-14);
  auto t1 = integrate_linear(one, ComplexPath::segment(0.0, pi / 2), vec(1.0, 0.0), tight);
  EXPECT_LT(std::abs(t1.back().y[0]), 1e-9);
  EXPECT_LT(std::abs(t1.back().y[1] + 1.0), 1e-9);
  auto m = fundamental_matrix(one, ComplexPath::segment(0.0, 2 * pi), tight);
  EXPECT_LT((m - Eigen::Matrix2cd::Identity()).norm(), 1e-8);
}

TEST(Linear, WronskianAndDeterminant) {
  auto p = PeriodicCoeff::affine_exp(1.0, 0.1);
  auto path = ComplexPath({0.0, cplx(1, 1), cplx(0.5, 3)});
  State id(4);
  id << 1.0, 0.0, 0.0, 1.0;
  auto t = integrate_linear(p, path, id, tight);
  for (const auto& s : t.samples) EXPECT_LT(std::abs(to_matrix(s.y).determinant() - 1.0), 1e-8);
  auto a = integrate_linear(p, path, vec(0.3, -1.0), tight);
  auto b = integrate_linear(p, path, vec(1.2, 0.4), tight);
  cplx w0 = 0.3 * 0.4 - 1.2 * -1.0;
  ASSERT_EQ(a.samples.size() > 0, true);
  cplx w1 = a.back().y[0] * b.back().y[1] - b.back().y[0] * a.back().y[1];
  EXPECT_LT(std::abs(w1 - w0) / std::abs(w0), 1e-8);
}

TEST(Linear, PathIndependence) {
  auto p = PeriodicCoeff::exponential();
  auto a = integrate_linear(p, ComplexPath({0.0, 1.0, cplx(1, 1)}), vec(1.0, 0.5), tight);
  auto b = integrate_linear(p, ComplexPath({0.0, cplx(0, 1), cplx(1, 1)}), vec(1.0, 0.5), tight);
  EXPECT_LT((a.back().y - b.back().y).norm(), 1e-8);
}

TEST(Linear, Errors) {
  auto p = PeriodicCoeff::constant(1.0);
  p.strip = 0.5;
  EXPECT_THROW(integrate_linear(p, ComplexPath::segment(0.0, cplx(0, 2)), vec(1.0, 0.0)), DomainError);
  EXPECT_THROW(ComplexPath({1.0}), ArgumentError);
  EXPECT_THROW(ComplexPath({1.0, 1.0}), ArgumentError);
  ToleranceSpec few;
  few.max_steps = 3;
  EXPECT_THROW(integrate_linear(PeriodicCoeff::constant(100.0), ComplexPath::segment(0.0, 10.0), vec(1.0, 0.0), few),
               ConvergenceError);
}

TEST(PlaneFlow, Omega2AlongX) {
  auto form = PlaneForm::from_form(omega2_form(), "Omega2");
  auto F = bessel_first_integral_2d();
  auto t = flow_plane_model(form, 1.0, 1.0, AlongX{ComplexPath::segment(1.0, 2.0)}, tight, avoid_singular(F));
  ASSERT_TRUE(t.complete()) << t.status;
  EXPECT_LT(audit_first_integral(F, t), 1e-6);
  EXPECT_GT(audit_first_integral(coordinate_x(), t), 1e-2);
}

TEST(PlaneFlow, InvariantLineAndSingularStart) {
  auto form = PlaneForm::from_form(omega2_form());
  auto t = flow_plane_model(form, 1.0, 0.0, ArcLength{3.0}, tight);
  for (const auto& s : t.samples) EXPECT_LT(std::abs(s.y[1]), 1e-12);
  EXPECT_THROW(flow_plane_model(form, 0.0, 0.0, ArcLength{1.0}), DomainError);
}

TEST(Audit, Basics) {
  auto zero = PeriodicCoeff::constant(0.0);
  auto t = hill_trajectory(zero, ComplexPath::segment(0.0, 2.0), 1.0, 1.0, tight);
  EXPECT_LT(audit_first_integral(rational_first_integral_p0(), t), 1e-10);
  FirstIntegral c("const", 3, [](FirstIntegral::Point) { return Quotient{3.0, 1.0}; });
  EXPECT_EQ(audit_first_integral(c, t), 0.0);
  FirstIntegral literal("y/x+z", 3, [](FirstIntegral::Point p) { return Quotient{p[1] + p[2] * p[0], p[0]}; });
  EXPECT_GT(audit_first_integral(literal, t), 1e-2);
}

TEST(Audit, BesselIntegralsAlongHillFlows) {
  auto te = hill_trajectory(PeriodicCoeff::exponential(), ComplexPath::segment(0.0, 2.0), 1.0, 0.0, tight);
  EXPECT_LT(audit_first_integral(bessel_first_integral_3d(), te), 1e-6);
  EXPECT_GT(audit_first_integral(bessel_first_integral_3d_unsigned(), te), 1e-3);

  auto one = PeriodicCoeff::constant(1.0);
  auto cs = solution_pair_first_integral([](cplx z) { return std::array<cplx, 2>{std::cos(z), -std::sin(z)}; },
                                         [](cplx z) { return std::array<cplx, 2>{std::sin(z), std::cos(z)}; });
  auto t1 = hill_trajectory(one, ComplexPath::segment(0.0, 1.0), 0.7, 0.2, tight);
  EXPECT_LT(audit_first_integral(cs, t1), 1e-8);

  auto bh = PeriodicCoeff::bessel_hill(0.0, 2.0);
  auto tb = hill_trajectory(bh, ComplexPath::segment(0.0, 0.5), 1.0, 0.3, tight);
  EXPECT_LT(audit_first_integral(bessel_hill_first_integral(0.0, 2.0), tb), 1e-6);
}

TEST(Audit, ModelIntegrals) {
  auto fn = [](int n) {
    std::string a = "-y + " + std::to_string(n) + "*y*x + " + std::to_string(n) + "*x^" + std::to_string(n - 1) + "*y^2";
    std::string b = "x^2 + y*x^" + std::to_string(n);
    return PlaneForm::from_form(OneForm(vars_xy(), {parse_poly(a), parse_poly(b)}));
  };
  auto F2 = model_first_integral_F(2);
  auto t = flow_plane_model(fn(2), 1.0, 0.5, ArcLength{1.0}, tight, avoid_singular(F2));
  EXPECT_LT(audit_first_integral(F2, t), 1e-6);
  auto g1 = PlaneForm::from_form(OneForm(vars_xy(), {parse_poly("-y + x*y^2 + y^2"), parse_poly("-x + 2*x^2*y + 2*x*y")}));
  auto G1 = model_first_integral_G(1);
  auto tg = flow_plane_model(g1, 0.7, 0.6, ArcLength{1.0}, tight, avoid_singular(G1));
  EXPECT_LT(audit_first_integral(G1, tg), 1e-6);
}

TEST(Audit, ToleranceMonotonicity) {
  auto form = PlaneForm::from_form(omega2_form());
  auto F = bessel_first_integral_2d();
  double prev = -1;
  for (double tol : {1e-6, 5e-7, 2.5e-7}) {
    auto t = flow_plane_model(form, 1.0, 1.0, ArcLength{3.0}, ToleranceSpec::uniform(tol), avoid_singular(F));
    double d = audit_first_integral(F, t);
    if (prev >= 0) {
      EXPECT_LE(d, 2 * prev + 1e-15);
    }
    prev = d;
  }
}

TEST(Holonomy, Separatrix) {
  EXPECT_EQ(holonomy(1.0, 0.0), cplx(0.0));
  double eps = 1e-4;
  cplx fd = (holonomy(1.0, eps) - holonomy(1.0, -eps)) / (2 * eps);
  EXPECT_LT(std::abs(fd - 1.0), 1e-5);
  EXPECT_LT(std::abs(holonomy_derivative(1.0, 0.0) - 1.0), 1e-9);
  auto F = bessel_first_integral_2d();
  cplx y0 = 0.05, h = holonomy(1.0, y0);
  EXPECT_LT(std::abs(F({1.0, h}) - F({1.0, y0})), 1e-6);
}

TEST(PeriodicOrbit, Shooting) {
  for (double r : {0.25, 1.0}) {
    auto o = periodic_orbit_from_scan(r);
    EXPECT_LT(o.residual, 1e-8) << r;
  }
  auto scan = orbit_grid_scan(0.25);
  ASSERT_GE(scan.size(), 2u);
  auto a = periodic_orbit(0.25, scan[0].x0);
  std::optional<PeriodicOrbit> b;
  for (std::size_t i = 1; i < scan.size() && !b; ++i)
    if (std::abs(scan[i].x0 - scan[0].x0) > 1.0) {
      try {
        b = periodic_orbit(0.25, scan[i].x0);
      } catch (const ConvergenceError&) {
      }
    }
  ASSERT_TRUE(b.has_value());
  // The fixed point is double (multiplier 1), so Newton only pins x0 to about sqrt(residual).
  EXPECT_LT(std::abs(a.multiplier - 1.0), 1e-4);
  EXPECT_LT(std::abs(a.x0 - b->x0), 1e-5);
  auto z = periodic_orbit(0.0, cplx(0.3, 0.2));
  EXPECT_LT(std::abs(z.x0), 1e-5);
  cplx x = 0.4;
  EXPECT_LT(std::abs(time_2pi_map(0.0, x).value - x / (1.0 - 2 * pi * I * x)), 1e-10);
}

TEST(Trajectory, Csv) {
  auto t = integrate_linear(PeriodicCoeff::constant(0.0), ComplexPath::segment(0.0, 1.0), vec(1.0, 0.0));
  std::ostringstream os;
  write_csv(t, os, {"u", "du"});
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "s,re_u,im_u,re_du,im_du,err");
}
