#include <gtest/gtest.h>

#include <gmpxx.h>

#include "hillfol/special/bessel.hpp"

using namespace hillfol;

namespace {

// Exact rational partial sum of sum_k (-1)^k (z/2)^{2k} / (k!)^2 at z = 2.
double j0_at_2_exact(int terms) {
  mpq_class sum = 0, term = 1;
  for (int k = 0; k < terms; ++k) {
    if (k > 0) term = -term / (k * k);
    sum += term;
  }
  return sum.get_d();
}

// Independent Y_nu for non-integer nu by a plain long double series.
long double j_plain(long double nu, long double x) {
  long double sum = 0;
  for (int k = 0; k < 80; ++k)
    sum += std::pow(-1.0L, k) * std::pow(x / 2, 2 * k + nu) / (std::tgamma(k + 1.0L) * std::tgamma(nu + k + 1.0L));
  return sum;
}

long double y_plain(long double nu, long double x) {
  const long double p = std::numbers::pi_v<long double>;
  return (j_plain(nu, x) * std::cos(nu * p) - j_plain(-nu, x)) / std::sin(nu * p);
}

// Simpson quadrature of int_0^inf e^{-t} t^{s-1} dt after t = u^2.
double gamma_quadrature(double s) {
  const int n = 200000;
  const double upper = 8.0;
  double h = upper / n, acc = 0;
  for (int i = 0; i <= n; ++i) {
    double u = i * h;
    double f = 2.0 * std::exp(-u * u) * std::pow(u, 2 * s - 1);
    acc += f * ((i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2));
  }
  return acc * h / 3;
}

std::vector<cplx> grid() {
  std::vector<cplx> g;
  for (double r : {0.3, 1.0, 2.5, 4.9})
    for (double th : {-2.5, -1.2, 0.0, 0.7, 1.9, 3.0}) g.push_back(std::polar(r, th));
  return g;
}

}  // namespace

TEST(Gamma, Values) {
  EXPECT_NEAR(std::abs(gamma_fn(1.0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(gamma_fn(5.0) - 24.0), 0.0, 1e-12);
  double oracle = gamma_quadrature(0.5);
  EXPECT_NEAR(oracle, std::sqrt(pi), 1e-9);
  EXPECT_NEAR(std::abs(gamma_fn(0.5) - oracle), 0.0, 1e-9);
  EXPECT_THROW(gamma_fn(-2.0), DomainError);
  EXPECT_THROW(gamma_fn(0.0), DomainError);
}

TEST(Gamma, FunctionalEquation) {
  for (cplx s : {cplx(0.3, 0.2), cplx(-3.7, 1.1), cplx(6.2, -4.0), cplx(-0.5, 0.0), cplx(2.5, 7.0)})
    EXPECT_LT(std::abs(gamma_fn(s + 1.0) - s * gamma_fn(s)) / std::abs(gamma_fn(s + 1.0)), 1e-12) << s;
}

TEST(BesselJ, Values) {
  EXPECT_LT(std::abs(bessel_j(0, 0.0) - 1.0), 1e-15);
  EXPECT_LT(std::abs(bessel_j(1, 0.0)), 1e-15);
  double oracle = j0_at_2_exact(40);
  EXPECT_NEAR(oracle, 0.22389077914123567, 1e-16);
  EXPECT_LT(std::abs(bessel_j(0, 2.0) - oracle), 1e-15);
  EXPECT_LT(std::abs(bessel_j(0.5, 2.0) - std::sqrt(2 / (pi * 2)) * std::sin(2.0)), 1e-14);
}

TEST(BesselY, Values) {
  EXPECT_LT(std::abs(bessel_y(0.5, 2.0) - (-std::cos(2.0) / std::sqrt(pi))), 1e-13);
  // Richardson extrapolation of the non-integer formula towards nu = 0.
  long double e = 1e-3L;
  long double y1 = (y_plain(e, 2) + y_plain(-e, 2)) / 2;
  long double y2 = (y_plain(e / 2, 2) + y_plain(-e / 2, 2)) / 2;
  double oracle = static_cast<double>((4 * y2 - y1) / 3);
  EXPECT_NEAR(oracle, 0.5103756726497451, 1e-10);
  EXPECT_LT(std::abs(bessel_y(0, 2.0) - oracle), 1e-10);
  EXPECT_THROW(bessel_y(0, 0.0), DomainError);
  cplx z(1, 1);
  cplx y3 = bessel_y(3, z), y2c = bessel_y(2, z), y1c = bessel_y(1, z);
  EXPECT_LT(std::abs(y3 - (4.0 / z) * y2c + y1c), 1e-10);
}

TEST(BesselY, IntegerAndFormulaAgreeNearby) {
  // The combination formula at nu = n +- 1e-5 brackets the log-series value.
  for (int n : {0, 1, 2})
    for (cplx z : {cplx(1.5, 0.5), cplx(3.0, -1.0)}) {
      cplx mid = (bessel_y(n + 1e-5, z) + bessel_y(n - 1e-5, z)) / 2.0;
      EXPECT_LT(std::abs(mid - bessel_y(n, z)), 1e-7) << n << " " << z;
    }
}

TEST(BesselDeriv, Values) {
  EXPECT_LT(std::abs(bessel_deriv(BesselKind::J, 0, 2.0) + 0.5767248077568734), 1e-14);
  EXPECT_LT(std::abs(bessel_deriv(BesselKind::J, 1, 0.0) - 0.5), 1e-15);
  cplx z(1.3, 0.4);
  double h = 1e-5;
  cplx fd = (bessel_j(0, z + h) - bessel_j(0, z - h)) / (2 * h);
  EXPECT_LT(std::abs(bessel_deriv(BesselKind::J, 0, z) - fd), 1e-7);
  cplx fdy = (bessel_y(1, z + h) - bessel_y(1, z - h)) / (2 * h);
  EXPECT_LT(std::abs(bessel_deriv(BesselKind::Y, 1, z) - fdy), 1e-7);
}

TEST(BesselProperty, RecurrenceParityDerivative) {
  for (cplx z : grid()) {
    for (double nu : {0.0, 1.0, 2.0, 0.5, 1.5}) {
      EXPECT_LT(std::abs(bessel_j(nu + 1, z) - (2 * nu / z) * bessel_j(nu, z) + bessel_j(nu - 1, z)), 1e-10);
      for (auto k : {BesselKind::J, BesselKind::Y}) {
        cplx alt = bessel(k, nu - 1, z) - nu / z * bessel(k, nu, z);
        cplx d = bessel_deriv(k, nu, z);
        EXPECT_LT(std::abs(d - alt) / std::max(1.0, std::abs(d)), 1e-10) << kind_name(k) << nu << z;
      }
    }
    for (int n : {1, 2, 3})
      EXPECT_LT(std::abs(bessel_j(-n, z) - std::pow(-1.0, n) * bessel_j(n, z)), 1e-12);
  }
}

TEST(BesselProperty, WronskianTimesZConstantOnRay) {
  for (double nu : {0.0, 1.0, 0.5}) {
    std::vector<cplx> vals;
    for (double r : {0.5, 1.0, 2.0, 3.5}) {
      cplx z = std::polar(r, 0.6);
      cplx w = bessel_j(nu, z) * bessel_deriv(BesselKind::Y, nu, z) -
               bessel_deriv(BesselKind::J, nu, z) * bessel_y(nu, z);
      vals.push_back(z * w);
    }
    for (auto v : vals) EXPECT_LT(std::abs(v - vals[0]), 1e-8);
  }
}

TEST(BesselProperty, SeriesConvergesUpTo30) {
  for (cplx z : {cplx(30, 0), cplx(0, 30), cplx(-21, 21)})
    for (double nu : {0.0, 1.0}) {
      auto s = bessel_j_series(nu, z);
      EXPECT_LT(s.terms, 300);
      auto bounds = bessel_ratio_bounds(nu, z, 120);
      std::size_t cross = 0;
      while (bounds[cross] >= 1.0) ++cross;
      for (std::size_t k = cross + 1; k < bounds.size(); ++k) EXPECT_LT(bounds[k], bounds[k - 1]);
    }
}

TEST(Bessel, Errors) {
  SeriesControl bad;
  bad.max_terms = 0;
  EXPECT_THROW(bessel_j(0, 1.0, bad), ArgumentError);
  SeriesControl tiny;
  tiny.max_terms = 3;
  EXPECT_THROW(bessel_j(0, 20.0, tiny), ConvergenceError);
}
