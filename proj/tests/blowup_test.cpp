#include <gtest/gtest.h>

#include <random>

#include "hillfol/algebra/parse.hpp"
#include "hillfol/blowup/blowup.hpp"

using namespace hillfol;

namespace {

OneForm form(const std::string& a, const std::string& b) { return OneForm(vars_xy(), {parse_poly(a), parse_poly(b)}); }

const std::array<GaussRat, 2> origin{GaussRat(0), GaussRat(0)};

}  // namespace

TEST(Chart, Omega2) {
  auto s = blowup_chart(omega2_form(), Chart::XY_X);
  EXPECT_EQ(s.m, 1);
  EXPECT_TRUE(s.origin_singular);
  EXPECT_EQ(s.strict, form("-y + y*x + y^2", "x^2 + y*x"));
  EXPECT_TRUE(s.factorization_exact());

  auto c = blowup_chart(omega2_form(), Chart::XY_Y);
  EXPECT_EQ(c.m, 1);
  EXPECT_EQ(c.strict, form("-y", "1 - x + x^2*y"));
  EXPECT_TRUE(c.factorization_exact());
}

TEST(Chart, NonSingularOrigin) {
  auto s = blowup_chart(form("1", "0"), Chart::XY_X);
  EXPECT_EQ(s.m, 0);
  EXPECT_FALSE(s.origin_singular);
  EXPECT_EQ(s.strict, form("1", "0"));
  EXPECT_THROW(blowup_chart(OneForm(vars_xyz()), Chart::XY_X), ArgumentError);
}

TEST(Chart, FactorizationIsExactOnRandomForms) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> c(-3, 3);
  for (int t = 0; t < 30; ++t) {
    Poly A(vars_xy()), B(vars_xy());
    for (int i = 0; i <= 3; ++i)
      for (int j = 0; i + j <= 3; ++j) {
        if (i + j == 0) continue;
        A.add_term({i, j, 0}, c(rng));
        B.add_term({i, j, 0}, c(rng));
      }
    OneForm w(vars_xy(), {A, B});
    if (w.is_zero()) continue;
    for (Chart ch : {Chart::XY_X, Chart::XY_Y}) {
      auto s = blowup_chart(w, ch);
      EXPECT_TRUE(s.factorization_exact());
      EXPECT_GE(s.m, 1);
    }
  }
}

TEST(Desing, GoldenModels) {
  auto seq = desing_sequence(6);
  ASSERT_EQ(seq.stages.size(), 6u);
  EXPECT_TRUE(seq.all_match());
  EXPECT_EQ(seq.stages[1].divisor.strict, form("-y + 2*y*x + 2*x*y^2", "x^2 + y*x^2"));
  EXPECT_EQ(seq.stages[1].corner.strict, form("-y + x*y^2 + y^2", "-x + 2*x^2*y + 2*x*y"));
  for (const auto& s : seq.stages) {
    EXPECT_EQ(s.divisor.strict, divisor_model(s.k));
    EXPECT_EQ(s.corner.strict, corner_model(s.k - 1));
    EXPECT_EQ(s.divisor.m, 1);
    EXPECT_EQ(s.corner.m, 1);
    EXPECT_EQ(s.divisor_point.label, "saddle-node");
    EXPECT_EQ(s.corner_point.label, "Siegel");
  }
  EXPECT_THROW(desing_sequence(0), ArgumentError);
}

TEST(Desing, TranscriptFlagsTerminology) {
  auto seq = desing_sequence(2);
  auto lines = seq.transcript();
  int notes = 0;
  for (const auto& l : lines)
    if (l.find("customarily called nilpotent") != std::string::npos) ++notes;
  EXPECT_EQ(notes, 2);
  auto j = seq.to_json();
  EXPECT_TRUE(j["all_match"].get<bool>());
  EXPECT_EQ(j["stages"][0]["corner"]["point"]["label"], "Siegel");
}

TEST(Classify, Examples) {
  auto siegel = classify(corner_model(0), {GaussRat(1), GaussRat(0)});
  EXPECT_EQ(siegel.label, "Siegel");
  EXPECT_NEAR(std::abs(siegel.eigenvalues[0] - cplx(-1)), 0, 1e-15);
  EXPECT_NEAR(std::abs(siegel.eigenvalues[1] - cplx(1)), 0, 1e-15);
  EXPECT_EQ(siegel.linear[0][0], GaussRat(-1));
  EXPECT_EQ(siegel.linear[0][1], GaussRat(1));
  EXPECT_EQ(siegel.linear[1][0], GaussRat(0));
  EXPECT_EQ(siegel.linear[1][1], GaussRat(1));

  auto sn = classify(divisor_model(1), origin);
  EXPECT_EQ(sn.label, "saddle-node");
  EXPECT_NEAR(std::abs(sn.eigenvalues[0]), 0, 1e-15);
  EXPECT_NEAR(std::abs(sn.eigenvalues[1] - cplx(1)), 0, 1e-15);

  auto radial = classify(form("-y", "x"), origin);
  EXPECT_EQ(radial.label, "Poincaré");
  EXPECT_NEAR(std::abs(radial.eigenvalues[0] - cplx(1)), 0, 1e-15);

  EXPECT_EQ(classify(form("1", "0"), origin).label, "regular");
  EXPECT_EQ(classify(form("-2*x*y", "x^2 - y^2"), origin).label, "nilpotent/degenerate");
  EXPECT_EQ(classify(form("-y", "y"), origin).label, "saddle-node");
  // focus: eigenvalues 1 +- i
  EXPECT_EQ(classify(form("x - y", "x + y"), origin).label, "Poincaré");
  // hyperbolic saddle
  EXPECT_EQ(classify(form("-y", "-x"), origin).label, "Siegel");
}

TEST(Classify, LabelDependsOnlyOnEigenvalues) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> c(-3, 3);
  for (int t = 0; t < 200; ++t) {
    int a = c(rng), b = c(rng), d = c(rng), e = c(rng);
    // dual field (a x + b y, d x + e y) from A dx + B dy with B = a x + b y, A = -(d x + e y)
    Poly A(vars_xy()), B(vars_xy());
    A.add_term({1, 0, 0}, -d);
    A.add_term({0, 1, 0}, -e);
    B.add_term({1, 0, 0}, a);
    B.add_term({0, 1, 0}, b);
    OneForm w(vars_xy(), {A, B});
    if (w.is_zero()) continue;
    auto r = classify(w, origin);
    cplx l1 = r.eigenvalues[0], l2 = r.eigenvalues[1];
    bool z1 = std::abs(l1) < 1e-12, z2 = std::abs(l2) < 1e-12;
    std::string expect;
    if (z1 && z2) expect = "nilpotent/degenerate";
    else if (z1 || z2) expect = "saddle-node";
    else {
      cplx ratio = l1 / l2;
      expect = std::abs(ratio.imag()) < 1e-9 && ratio.real() < 0 ? "Siegel" : "Poincaré";
    }
    EXPECT_EQ(r.label, expect) << a << " " << b << " " << d << " " << e;
  }
}

TEST(Audit, ModelIntegrals) {
  auto a1 = audit_model_integrals(ModelKind::Divisor, 1, 1.0, 0.5);
  EXPECT_LT(a1.drift, 1e-6);
  EXPECT_GT(a1.samples, 10u);
  auto a3 = audit_model_integrals(ModelKind::Divisor, 3, 0.8, 0.3);
  EXPECT_LT(a3.drift, 1e-6);
  auto g2 = audit_model_integrals(ModelKind::Corner, 2, 0.7, 0.6);
  EXPECT_LT(g2.drift, 1e-6);
  EXPECT_EQ(g2.integral, "G_2");
  EXPECT_THROW(audit_model_integrals(ModelKind::Corner, 0, 0.7, 0.6), ArgumentError);
}

TEST(Audit, F1IsThePullbackOfTheBesselIntegral) {
  auto F = bessel_first_integral_2d();
  auto F1 = model_first_integral_F(1);
  for (auto [x, y] : {std::pair{1.0, 0.5}, {0.8, 0.3}, {1.3, 0.9}}) {
    cplx a = F({cplx(x), cplx(x * y)}), b = F1({cplx(x), cplx(y)});
    EXPECT_NEAR(std::abs(a - b), 0, 1e-12 * std::max(1.0, std::abs(a)));
  }
}
