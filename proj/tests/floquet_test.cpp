#include <gtest/gtest.h>

#include "hillfol/floquet/floquet.hpp"
#include "hillfol/models/integrals.hpp"
#include "hillfol/special/bessel.hpp"

using namespace hillfol;

namespace {

const cplx two_pi_i{0.0, 2 * pi};

double direction_error(const Eigen::Vector2cd& v, const Eigen::Vector2cd& w) {
  return std::abs(v[0] * w[1] - v[1] * w[0]) / (v.norm() * w.norm());
}

Trajectory leaf(const PeriodicCoeff& p, cplx z1 = 1.0) {
  return hill_trajectory(p, ComplexPath::segment(0.0, z1), 0.6, 0.3, ToleranceSpec::uniform(1e-12));
}

}  // namespace

TEST(Monodromy, ClosedForms) {
  auto m0 = monodromy(PeriodicCoeff::constant(0.0));
  Eigen::Matrix2cd shear;
  shear << 1.0, 2 * pi, 0.0, 1.0;
  EXPECT_LT((m0.M - shear).norm(), 1e-9);
  EXPECT_TRUE(floquet_decompose(m0).degenerate);

  auto m1 = monodromy(PeriodicCoeff::constant(1.0));
  EXPECT_LT((m1.M - Eigen::Matrix2cd::Identity()).norm(), 1e-8);
  auto d1 = floquet_decompose(m1);
  EXPECT_FALSE(d1.degenerate);
  EXPECT_LT(std::abs(d1.exponents[0]), 1e-8);
}

TEST(Monodromy, ExponentialHasBesselEigenvector) {
  auto m = monodromy(PeriodicCoeff::exponential());
  EXPECT_LT(std::abs(m.det() - 1.0), 1e-8);
  auto d = floquet_decompose(m);
  EXPECT_TRUE(d.degenerate);
  EXPECT_LT(std::abs(d.multipliers[0] - 1.0), 1e-8);
  EXPECT_EQ(d.multipliers[0], d.multipliers[1]);
  ASSERT_TRUE(d.eigenvectors[0].has_value());
  Eigen::Vector2cd expected(bessel_j(0, 2.0), -bessel_j(1, 2.0));
  EXPECT_LT(direction_error(*d.eigenvectors[0], expected), 1e-8);
  EXPECT_LT((m.M * expected - expected).norm(), 1e-8);
}

TEST(Monodromy, QuarterConstantHalfExponents) {
  auto d = floquet_decompose(monodromy(PeriodicCoeff::constant(0.25)));
  EXPECT_FALSE(d.degenerate);
  for (cplx r : d.multipliers) EXPECT_LT(std::abs(r + 1.0), 1e-8);
  EXPECT_LT(std::abs(d.exponents[0] - 0.5 * I), 1e-8);
  EXPECT_LT(std::abs(d.exponents[1] + 0.5 * I), 1e-8);
}

TEST(Monodromy, Properties) {
  std::vector<PeriodicCoeff> ps{PeriodicCoeff::affine_exp(1.0, 0.1), PeriodicCoeff::cosh_family(0.5, 0.2),
                                PeriodicCoeff::constant(cplx(2.0, 0.3)), PeriodicCoeff::bessel_hill(0.5, 1.0)};
  for (const auto& p : ps) {
    auto m = monodromy(p);
    EXPECT_LT(std::abs(m.det() - 1.0), 1e-8) << p.name;
    auto d = floquet_decompose(m);
    EXPECT_LT(std::abs(d.multipliers[0] * d.multipliers[1] - 1.0), 1e-8) << p.name;
    EXPECT_LT(std::abs(d.multipliers[0] + d.multipliers[1] - m.trace()), 1e-8) << p.name;
    for (cplx mu : d.exponents) {
      double arg = (mu * m.T).imag();
      EXPECT_TRUE(arg > -pi && arg <= pi + 1e-12) << p.name;
    }
    auto shifted = monodromy(p, cplx(0.3, 0.2));
    EXPECT_LT(std::abs(shifted.trace() - m.trace()), 1e-8 * std::max(1.0, std::abs(m.trace()))) << p.name;
  }
}

TEST(Floquet, DecomposeMatrices) {
  auto id = floquet_decompose({Eigen::Matrix2cd::Identity(), 0.0, 2 * pi});
  EXPECT_FALSE(id.degenerate);
  EXPECT_EQ(id.multipliers[0], cplx(1.0));
  EXPECT_EQ(id.exponents[0], cplx(0.0));
  Eigen::Matrix2cd j;
  j << 1.0, 2 * pi, 0.0, 1.0;
  auto dj = floquet_decompose({j, 0.0, 2 * pi});
  EXPECT_TRUE(dj.degenerate);
  EXPECT_FALSE(dj.eigenvectors[1].has_value());
  EXPECT_FALSE(floquet_decompose({j, 0.0, 2 * pi}).to_json().dump().empty());
}

TEST(PeriodicPart, Examples) {
  auto one = PeriodicCoeff::constant(1.0, two_pi_i);
  auto d = floquet_decompose(monodromy(one));
  int k = std::abs(d.exponents[0] - I) < 1e-8 ? 0 : 1;
  ASSERT_LT(std::abs(d.exponents[k] - I), 1e-8);
  auto P = periodic_part(one, d, k);
  for (cplx v : P.values) EXPECT_LT(std::abs(v - P.values[0]), 1e-8);

  auto e = PeriodicCoeff::exponential();
  auto de = floquet_decompose(monodromy(e));
  auto Pe = periodic_part(e, 0.0, *de.eigenvectors[0]);
  EXPECT_LT(Pe.periodicity_defect(), 1e-7);
  EXPECT_THROW(periodic_part(e, de, 1), DomainError);
  EXPECT_THROW(periodic_part(one, d, 0, 0.0, 1), ArgumentError);
}

TEST(Fourier, BasisElements) {
  PeriodicPart c{0.0, 0.0, two_pi_i, std::vector<cplx>(65, cplx(2.0, -1.0))};
  auto fc = fourier_coefficients(c, 4);
  EXPECT_LT(std::abs(fc.coeff(0) - cplx(2.0, -1.0)), 1e-12);
  for (int k = 1; k <= 4; ++k) EXPECT_LT(std::abs(fc.coeff(k)) + std::abs(fc.coeff(-k)), 1e-12);

  PeriodicPart ez{0.0, cplx(0.2, 0.1), two_pi_i, {}};
  for (int j = 0; j <= 64; ++j) ez.values.push_back(std::exp(ez.z0 + two_pi_i * (j / 64.0)));
  auto fe = fourier_coefficients(ez, 4);
  EXPECT_LT(std::abs(fe.coeff(1) - 1.0), 1e-10);
  for (int k = -4; k <= 4; ++k)
    if (k != 1) {
      EXPECT_LT(std::abs(fe.coeff(k)), 1e-10);
    }
  EXPECT_LE(fe.residual, fe.tail_bound);
  EXPECT_THROW(fourier_coefficients(ez, 16), ArgumentError);
  EXPECT_THROW(fourier_coefficients(ez, -1), ArgumentError);
}

TEST(Fourier, AffineExpCoefficients) {
  // phi = e^{iz} sum c_k e^{kz} with c_k = -0.1 c_{k-1} / (k^2 + 2ik).
  auto p = PeriodicCoeff::affine_exp(1.0, 0.1);
  auto d = floquet_decompose(monodromy(p));
  int k = std::abs(d.exponents[0] - I) < 1e-8 ? 0 : 1;
  ASSERT_LT(std::abs(d.exponents[k] - I), 1e-8);
  auto f = fourier_coefficients(periodic_part(p, d, k), 16);
  EXPECT_LE(f.residual, f.tail_bound);
  std::vector<cplx> c{1.0};
  for (int n = 1; n <= 6; ++n) c.push_back(-0.1 * c.back() / (double(n * n) + 2.0 * I * double(n)));
  cplx scale = f.coeff(0);
  for (int n = 1; n <= 6; ++n) EXPECT_LT(std::abs(f.coeff(n) / scale - c[n]), 1e-9 + 1e-6 * std::abs(c[n]));
  for (int n = 1; n <= 8; ++n) EXPECT_LT(std::abs(f.coeff(-n) / scale), 1e-9);
  for (int n = 2; n <= 5; ++n) EXPECT_LT(std::abs(f.coeff(n + 1)) / std::abs(f.coeff(n)), 0.5);
}

TEST(LaurentFourier, ConstantCoefficient) {
  auto one = PeriodicCoeff::constant(1.0, two_pi_i);
  auto H = laurent_fourier_first_integral(one, 0);
  EXPECT_LT(audit_first_integral(H, leaf(one)), 1e-8);
  auto cs = solution_pair_first_integral([](cplx z) { return std::array<cplx, 2>{std::cos(z), -std::sin(z)}; },
                                         [](cplx z) { return std::array<cplx, 2>{std::sin(z), std::cos(z)}; });
  EXPECT_LT(audit_first_integral(cs, leaf(one)), 1e-8);
}

TEST(LaurentFourier, TruncationDecay) {
  auto p = PeriodicCoeff::affine_exp(1.0, 0.1);
  auto t = leaf(p);
  double d0 = audit_first_integral(laurent_fourier_first_integral(p, 0), t);
  double d4 = audit_first_integral(laurent_fourier_first_integral(p, 4), t);
  double d8 = audit_first_integral(laurent_fourier_first_integral(p, 8), t);
  double d16 = audit_first_integral(laurent_fourier_first_integral(p, 16), t);
  EXPECT_LT(d16, 1e-4);
  EXPECT_LT(d16, d4);
  EXPECT_GT(d0, d8);
}

TEST(LaurentFourier, ReflectedModeNeedsEvenP) {
  LaurentFourierOptions refl;
  refl.mode = LaurentMode::Reflected;
  auto even = PeriodicCoeff::cosh_family(1.0, 0.1);
  EXPECT_LT(audit_first_integral(laurent_fourier_first_integral(even, 12, refl), leaf(even)), 1e-6);
  EXPECT_LT(audit_first_integral(laurent_fourier_first_integral(even, 12), leaf(even)), 1e-6);
  auto odd = PeriodicCoeff::affine_exp(1.0, 0.1);
  EXPECT_GT(audit_first_integral(laurent_fourier_first_integral(odd, 12, refl), leaf(odd)), 1e-4);
  EXPECT_THROW(laurent_fourier_first_integral(PeriodicCoeff::exponential(), 4), DomainError);
}

TEST(LaurentFourier, AgreesWithSolutionPair) {
  // phi_1, phi_2 integrated directly serve as the solution pair.
  auto p = PeriodicCoeff::cosh_family(1.0, 0.1);
  auto d = floquet_decompose(monodromy(p));
  auto solution = [&p](Eigen::Vector2cd v) {
    return [p, v](cplx z) -> std::array<cplx, 2> {
      State u0(2);
      u0 << v[0], v[1];
      if (z == cplx(0.0)) return {v[0], v[1]};
      auto t = integrate_linear(p, ComplexPath::segment(0.0, z), u0, ToleranceSpec::uniform(1e-12));
      return {t.back().y[0], t.back().y[1]};
    };
  };
  auto S = solution_pair_first_integral(solution(*d.eigenvectors[0]), solution(*d.eigenvectors[1]), 0.0);
  auto t = leaf(p, 0.5);
  Trajectory thin;
  for (std::size_t i = 0; i < t.samples.size(); i += 4) thin.samples.push_back(t.samples[i]);
  EXPECT_LT(audit_first_integral(S, thin), 1e-6);
  EXPECT_LT(audit_first_integral(laurent_fourier_first_integral(p, 12), thin), 1e-6);
}
