#include <gtest/gtest.h>

#include <random>

#include "hillfol/algebra/exact_linalg.hpp"
#include "hillfol/algebra/parse.hpp"
#include "hillfol/algebra/poly_map.hpp"

using namespace hillfol;

namespace {

Poly P(const char* s, const VarList& v = vars_xy()) { return parse_poly(s, v); }

OneForm form2(const char* a, const char* b) { return OneForm(vars_xy(), {P(a), P(b)}); }

OneForm form3(const char* a, const char* b, const char* c) {
  const auto& v = vars_xyz();
  return OneForm(v, {P(a, v), P(b, v), P(c, v)});
}

Poly random_poly(std::mt19937_64& rng, const VarList& vars, int deg) {
  std::uniform_int_distribution<int> coef(-5, 5), den(1, 4), keep(0, 2);
  Poly p(vars);
  for (int a = 0; a <= deg; ++a)
    for (int b = 0; a + b <= deg; ++b)
      for (int c = 0; a + b + c <= deg; ++c) {
        if (vars.size() == 2 && c > 0) continue;
        if (keep(rng) != 0) continue;
        p.add_term({a, b, c}, GaussRat(mpq_class(coef(rng), den(rng)), mpq_class(coef(rng) / 3, 1)));
      }
  return p;
}

OneForm omega2() { return form2("-y", "x^2 + y"); }

}  // namespace

TEST(GaussRat, ExactArithmetic) {
  GaussRat a(mpq_class(1, 3), mpq_class(2, 5));
  GaussRat b = GaussRat::i();
  EXPECT_EQ(b * b, GaussRat(-1));
  EXPECT_EQ((a / a), GaussRat(1));
  EXPECT_EQ(a * a.conj(), GaussRat(a.norm2()));
  EXPECT_THROW(a / GaussRat(0), DomainError);
  EXPECT_EQ(GaussRat(mpq_class(3, 4)).serialize(), "3/4");
  EXPECT_EQ(GaussRat(mpq_class(1), mpq_class(-2)).serialize(), "(1/1 + -2/1 i)");
}

TEST(GaussRat, ParseAndReconstruct) {
  EXPECT_EQ(parse_rational("0.25"), mpq_class(1, 4));
  EXPECT_EQ(parse_rational("-7/21"), mpq_class(-1, 3));
  EXPECT_THROW(parse_rational("1/0"), ArgumentError);
  EXPECT_EQ(*reconstruct_rational(0.4285714285714286, 1e-12), mpq_class(3, 7));
  EXPECT_FALSE(reconstruct_rational(std::numbers::pi, 1e-14, 1000).has_value());
}

TEST(Poly, Basics) {
  EXPECT_EQ(P("x^2*y").derivative("x"), P("2*x*y"));
  EXPECT_EQ(P("(x+y)*(x-y)"), P("x^2 - y^2"));
  EXPECT_EQ(P("y^2 + 3*x^2").derivative("y"), P("2*y"));
  EXPECT_TRUE(P("7").derivative(0).is_zero());
  EXPECT_THROW(P("x") + P("x", vars_xyz()), ArgumentError);
  EXPECT_EQ(P("x^2 + 2*x*y - 1/2").pretty(), "x^2 + 2*x*y - 1/2");
  EXPECT_EQ(P("x^2 - i*y").serialize(), "1/1 x^2 + (0/1 + -1/1 i) y^1");
  EXPECT_EQ(P("x^(-2)*y").pretty(), "x^(-2)*y");
  EXPECT_THROW(P("x + "), ArgumentError);
  EXPECT_THROW(P("w"), ArgumentError);
}

TEST(Poly, DivisionAndSubstitution) {
  auto q = P("x^3 - y^3").divide_exact(P("x - y"));
  ASSERT_TRUE(q);
  EXPECT_EQ(*q, P("x^2 + x*y + y^2"));
  EXPECT_FALSE(P("x^2 + 1").divide_exact(P("x - 1")).has_value());
  EXPECT_EQ(P("x*y + y^2").substitute({P("x*y"), P("y")}), P("x*y^2 + y^2"));
  EXPECT_EQ(P("x").substitute({P("x^(-1)"), P("y")}), P("x^(-1)"));
}

TEST(Forms, Wedge) {
  auto dx = OneForm::basis_form(vars_xy(), 0);
  auto dy = OneForm::basis_form(vars_xy(), 1);
  EXPECT_EQ(wedge(dx, dy)[0], P("1"));
  EXPECT_EQ(wedge(dy, dx)[0], P("-1"));
  auto w = form2("-y", "x");
  EXPECT_TRUE(wedge(w, w).is_zero());
  auto eta = form2("x*y + 1", "x - y^2");
  Poly expected = P("(x^2 + y)*(x*y + 1) + y*(x - y^2)");
  EXPECT_EQ(wedge(eta, omega2())[0], expected);
}

TEST(Forms, ExteriorDerivative) {
  EXPECT_EQ(exterior_derivative(omega2())[0], P("1 + 2*x"));
  auto a = form3("-y", "x", "y^2 + x^2");
  auto d = exterior_derivative(a);
  const auto& v = vars_xyz();
  EXPECT_EQ(d, TwoForm(v, {P("2", v), P("2*x", v), P("2*y", v)}));
  Poly f = P("x^2*y + z^3", v);
  EXPECT_TRUE(exterior_derivative(exterior_derivative(f)).is_zero());
}

TEST(Forms, Contract) {
  EXPECT_EQ(contract(form2("-y", "x"), {P("y"), P("-x")}), P("-x^2 - y^2"));
  EXPECT_TRUE(contract(OneForm::basis_form(vars_xy(), 0), {P("0"), P("1")}).is_zero());
}

TEST(Forms, IntegrabilityDefect) {
  const auto& v = vars_xyz();
  EXPECT_TRUE(integrability_defect(OneForm::basis_form(v, 2)).is_zero());
  EXPECT_TRUE(integrability_defect(form3("z", "0", "x")).is_zero());
  EXPECT_FALSE(integrability_defect(form3("y", "0", "x")).is_zero());
}

TEST(Forms, PullbackPaperCharts) {
  const auto& v = vars_xy();
  EXPECT_EQ(pullback(omega2(), PolyMap::identity(v)), omega2());
  auto chart1 = PolyMap(v, {P("x"), P("x*y")});
  EXPECT_EQ(pullback(omega2(), chart1), P("x") * form2("-y + y*x + y^2", "x^2 + y*x"));
  for (int n = 1; n <= 6; ++n) {
    std::string xn = "x^" + std::to_string(n);
    auto pin = PolyMap(v, {P("x"), P((xn + "*y").c_str())});
    std::string a = "-y + " + std::to_string(n) + "*y*x + " + std::to_string(n) + "*x^" +
                    std::to_string(n - 1) + "*y^2";
    std::string b = "x^2 + y*" + xn;
    OneForm strict = form2(a.c_str(), b.c_str());
    OneForm pb = pullback(omega2(), pin);
    EXPECT_EQ(pb, P(xn.c_str()) * strict) << n;
    Exponents e{n, 0, 0};
    EXPECT_EQ(divide_out(pb, e), strict) << n;
  }
}

TEST(Forms, DivideOutErrors) {
  try {
    divide_out(form2("y", "0"), {1, 0, 0});
    FAIL();
  } catch (const ArgumentError& e) {
    EXPECT_NE(std::string(e.what()).find("does not divide term y"), std::string::npos);
  }
  EXPECT_EQ(divide_out(P("x") * omega2(), {1, 0, 0}), omega2());
}

TEST(Forms, RationalMap) {
  const auto& v = vars_xy();
  EXPECT_THROW(PolyMap::ratio(P("y"), P("0")), DomainError);
  EXPECT_THROW(PolyMap::ratio(P("y"), P("x + 1")), ArgumentError);
  Poly yx = PolyMap::ratio(P("y"), P("x"));
  OneForm pb = pullback(form2("1", "0"), PolyMap(v, {yx, P("y")}));
  Exponents e = clear_denominators(pb);
  EXPECT_EQ(e, (Exponents{2, 0, 0}));
  EXPECT_EQ(pb, form2("-y", "x"));
}

TEST(FormsProperty, WedgeSelfVanishes) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    const auto& v = vars_xyz();
    OneForm a(v, {random_poly(rng, v, 3), random_poly(rng, v, 3), random_poly(rng, v, 3)});
    EXPECT_TRUE(wedge(a, a).is_zero());
  }
}

TEST(FormsProperty, DSquaredVanishes) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    Poly f = random_poly(rng, vars_xyz(), 6);
    EXPECT_TRUE(exterior_derivative(exterior_derivative(f)).is_zero());
    OneForm a(vars_xyz(), {random_poly(rng, vars_xyz(), 4), random_poly(rng, vars_xyz(), 4),
                           random_poly(rng, vars_xyz(), 4)});
    EXPECT_TRUE(exterior_derivative(exterior_derivative(a)).is_zero());
  }
}

TEST(FormsProperty, PullbackNaturality) {
  std::mt19937_64 rng(13);
  const auto& v = vars_xy();
  for (int t = 0; t < 10; ++t) {
    PolyMap phi(v, {random_poly(rng, v, 2), random_poly(rng, v, 2)});
    PolyMap psi(v, {random_poly(rng, v, 2), random_poly(rng, v, 2)});
    OneForm a(v, {random_poly(rng, v, 3), random_poly(rng, v, 3)});
    OneForm b(v, {random_poly(rng, v, 3), random_poly(rng, v, 3)});
    EXPECT_EQ(pullback(exterior_derivative(a), phi), exterior_derivative(pullback(a, phi)));
    EXPECT_EQ(pullback(wedge(a, b), phi), wedge(pullback(a, phi), pullback(b, phi)));
    EXPECT_EQ(pullback(a, phi.compose(psi)), pullback(pullback(a, phi), psi));
  }
}

TEST(LinearAlgebra, SolveAndNullspace) {
  QMatrix m{{1, 2, 3}, {2, 4, 6}};
  auto ker = nullspace(m, 3);
  ASSERT_EQ(ker.size(), 2u);
  for (const auto& k : ker) EXPECT_TRUE((GaussRat(1) * k[0] + GaussRat(2) * k[1] + GaussRat(3) * k[2]).is_zero());
  EXPECT_FALSE(solve(m, {1, 3}, 3).has_value());
  auto x = solve_min_norm({{1, 1}}, {2}, 2);
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0], GaussRat(1));
  EXPECT_EQ((*x)[1], GaussRat(1));
}

TEST(LinearAlgebra, CharacteristicPolynomial) {
  QMatrix a{{2, 1}, {0, 3}};
  auto c = charpoly(a);
  EXPECT_EQ(c, (QVector{6, -5, 1}));
  QMatrix r{{0, -1}, {1, 0}};
  EXPECT_EQ(charpoly(r), (QVector{1, 0, 1}));
}
