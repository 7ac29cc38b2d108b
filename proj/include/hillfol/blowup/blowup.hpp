#pragma once

#include "json.hpp"

#include <string>
#include <vector>

#include "hillfol/algebra/poly_map.hpp"
#include "hillfol/models/integrals.hpp"
#include "hillfol/models/plane.hpp"
#include "hillfol/ode/flows.hpp"

namespace hillfol {

using json = nlohmann::json;

enum class Chart { XY_X, XY_Y };  // (x, y) -> (x, xy) and (x, y) -> (xy, y)

inline std::string chart_name(Chart c) { return c == Chart::XY_X ? "(x, xy)" : "(xy, y)"; }

inline Chart parse_chart(const std::string& s) {
  if (s == "(x, xy)" || s == "x,xy" || s == "x") return Chart::XY_X;
  if (s == "(xy, y)" || s == "xy,y" || s == "y") return Chart::XY_Y;
  throw ArgumentError("unknown chart '" + s + "'");
}

inline PolyMap chart_map(Chart c) {
  const VarList& v = vars_xy();
  Poly x = Poly::variable(v, 0), y = Poly::variable(v, 1);
  return c == Chart::XY_X ? PolyMap(v, {x, x * y}) : PolyMap(v, {x * y, y});
}

struct BlowupStep {
  Chart chart = Chart::XY_X;
  OneForm input{vars_xy()};
  OneForm pullback{vars_xy()};
  int m = 0;  // power of the exceptional divisor (x or y) divided out
  OneForm strict{vars_xy()};
  bool origin_singular = true;

  /// divisor^m * strict == pullback, checked exactly.
  bool factorization_exact() const {
    Exponents e{0, 0, 0};
    e[chart == Chart::XY_X ? 0 : 1] = m;
    return strict.shifted(e) == pullback;
  }

  json to_json() const {
    return {{"chart", chart_name(chart)},
            {"input", input.pretty()},
            {"pullback", pullback.pretty()},
            {"m", m},
            {"strict_transform", strict.pretty()},
            {"origin_singular", origin_singular}};
  }
};

inline void require_plane_polynomial(const OneForm& w) {
  if (w.nvars() != 2 || w.vars() != vars_xy()) throw ArgumentError("blow-ups need a 1-form in x, y");
  if (!w.is_polynomial()) throw ArgumentError("blow-ups need polynomial coefficients");
}

inline BlowupStep blowup_chart(const OneForm& w, Chart chart) {
  require_plane_polynomial(w);
  BlowupStep s;
  s.chart = chart;
  s.input = w;
  s.origin_singular = w[0].coeff({0, 0, 0}).is_zero() && w[1].coeff({0, 0, 0}).is_zero();
  s.pullback = pullback(w, chart_map(chart));
  std::size_t var = chart == Chart::XY_X ? 0 : 1;
  Exponents e{0, 0, 0};
  if (!s.pullback.is_zero()) e[var] = monomial_content(s.pullback)[var];
  s.m = e[var];
  s.strict = divide_out(s.pullback, e);
  return s;
}

struct SingularPointReport {
  std::array<GaussRat, 2> location{GaussRat(0), GaussRat(0)};
  bool singular = false;
  std::array<std::array<GaussRat, 2>, 2> linear{};  // Jacobian of (B, -A)
  std::array<cplx, 2> eigenvalues{};
  std::string label = "regular";

  json to_json() const {
    json lin = json::array();
    for (const auto& row : linear) lin.push_back({row[0].pretty(), row[1].pretty()});
    json ev = json::array();
    for (cplx l : eigenvalues) ev.push_back({l.real(), l.imag()});
    return {{"location", {location[0].pretty(), location[1].pretty()}},
            {"singular", singular},
            {"linear_part", lin},
            {"eigenvalues", ev},
            {"label", label}};
  }
};

/// Label from the trace and determinant of the linear part, decided exactly.
inline std::string singularity_label(const GaussRat& tr, const GaussRat& det) {
  if (det.is_zero()) return tr.is_zero() ? "nilpotent/degenerate" : "saddle-node";
  // eigenvalue ratio r is a negative real iff tr^2/det = r + 1/r + 2 is a real number <= 0
  GaussRat t = tr * tr / det;
  if (t.is_real() && sgn(t.re()) <= 0) return "Siegel";
  return "Poincaré";
}

inline SingularPointReport classify(const OneForm& w, const std::array<GaussRat, 2>& point) {
  require_plane_polynomial(w);
  SingularPointReport r;
  r.location = point;
  std::vector<GaussRat> p{point[0], point[1]};
  Poly X = w[1], Y = -w[0];
  r.singular = X.evaluate_exact(p).is_zero() && Y.evaluate_exact(p).is_zero();
  r.linear = {{{X.derivative(0).evaluate_exact(p), X.derivative(1).evaluate_exact(p)},
               {Y.derivative(0).evaluate_exact(p), Y.derivative(1).evaluate_exact(p)}}};
  GaussRat tr = r.linear[0][0] + r.linear[1][1];
  GaussRat det = r.linear[0][0] * r.linear[1][1] - r.linear[0][1] * r.linear[1][0];
  cplx t = tr.to_complex(), d = det.to_complex();
  cplx root = std::sqrt(t * t - 4.0 * d);
  r.eigenvalues = {(t - root) / 2.0, (t + root) / 2.0};
  std::sort(r.eigenvalues.begin(), r.eigenvalues.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  r.label = r.singular ? singularity_label(tr, det) : "regular";
  return r;
}

/// (-y + n y x + n x^{n-1} y^2) dx + (x^2 + y x^n) dy, the form at the divisor point after n blow-ups.
inline OneForm divisor_model(int n) {
  if (n < 1) throw ArgumentError("divisor model needs n >= 1");
  const VarList& v = vars_xy();
  Poly A(v), B(v);
  A.add_term({0, 1, 0}, -1);
  A.add_term({1, 1, 0}, n);
  A.add_term({n - 1, 2, 0}, n);
  B.add_term({2, 0, 0}, 1);
  B.add_term({n, 1, 0}, 1);
  return OneForm(v, {A, B});
}

/// Corner model. j = 0 is -y dx + (1 - x + x^2 y) dy, singular at (1, 0); for j >= 1
/// (-y + j x y^2 + j x^{j-1} y^{j+1}) dx + (-x + (j+1) x^2 y + (j+1) x^j y^j) dy at the origin.
inline OneForm corner_model(int j) {
  if (j < 0) throw ArgumentError("corner model needs j >= 0");
  const VarList& v = vars_xy();
  Poly A(v), B(v);
  if (j == 0) {
    A.add_term({0, 1, 0}, -1);
    B.add_term({0, 0, 0}, 1);
    B.add_term({1, 0, 0}, -1);
    B.add_term({2, 1, 0}, 1);
  } else {
    A.add_term({0, 1, 0}, -1);
    A.add_term({1, 2, 0}, j);
    A.add_term({j - 1, j + 1, 0}, j);
    B.add_term({1, 0, 0}, -1);
    B.add_term({2, 1, 0}, j + 1);
    B.add_term({j, j, 0}, j + 1);
  }
  return OneForm(v, {A, B});
}

inline std::array<GaussRat, 2> corner_point(int j) {
  return j == 0 ? std::array<GaussRat, 2>{GaussRat(1), GaussRat(0)} : std::array<GaussRat, 2>{GaussRat(0), GaussRat(0)};
}

struct DesingStage {
  int k = 0;
  BlowupStep divisor;
  SingularPointReport divisor_point;
  bool divisor_matches = false;
  BlowupStep corner;
  SingularPointReport corner_point;
  bool corner_matches = false;

  json to_json() const {
    return {{"k", k},
            {"divisor", {{"step", divisor.to_json()}, {"point", divisor_point.to_json()}, {"matches_model", divisor_matches}}},
            {"corner",
             {{"j", k - 1}, {"step", corner.to_json()}, {"point", corner_point.to_json()}, {"matches_model", corner_matches}}}};
  }
};

struct DesingSequence {
  OneForm start{vars_xy()};
  std::vector<DesingStage> stages;

  bool all_match() const {
    for (const auto& s : stages)
      if (!s.divisor_matches || !s.corner_matches || !s.divisor.factorization_exact() || !s.corner.factorization_exact())
        return false;
    return true;
  }

  std::vector<std::string> transcript() const {
    std::vector<std::string> out{"start: " + start.pretty()};
    auto ev = [](const SingularPointReport& r) {
      std::string s = "{";
      for (std::size_t i = 0; i < 2; ++i) {
        cplx l = r.eigenvalues[i];
        s += (i ? ", " : "") + format_double(l.real());
        if (l.imag() != 0) s += (l.imag() < 0 ? " - " : " + ") + format_double(std::abs(l.imag())) + "i";
      }
      return s + "}";
    };
    for (const auto& s : stages) {
      out.push_back("blow-up " + std::to_string(s.k) + ":");
      out.push_back("  chart " + chart_name(s.divisor.chart) + ", m = " + std::to_string(s.divisor.m) + ": " +
                    s.divisor.strict.pretty() + (s.divisor_matches ? "  [matches divisor model n = " : "  [differs from divisor model n = ") +
                    std::to_string(s.k) + "]");
      out.push_back("    origin: eigenvalues " + ev(s.divisor_point) + ", " + s.divisor_point.label);
      if (s.divisor_point.label == "saddle-node")
        out.push_back("    note: this point is customarily called nilpotent, but its linear part has a nonzero eigenvalue");
      std::string at = s.k == 1 ? "(1, 0)" : "origin";
      out.push_back("  chart " + chart_name(s.corner.chart) + ", m = " + std::to_string(s.corner.m) + ": " +
                    s.corner.strict.pretty() + (s.corner_matches ? "  [matches corner model j = " : "  [differs from corner model j = ") +
                    std::to_string(s.k - 1) + "]");
      out.push_back("    " + at + ": eigenvalues " + ev(s.corner_point) + ", " + s.corner_point.label);
    }
    return out;
  }

  json to_json() const {
    json st = json::array();
    for (const auto& s : stages) st.push_back(s.to_json());
    return {{"start", start.pretty()}, {"stages", st}, {"all_match", all_match()}, {"transcript", transcript()}};
  }

 private:
  static std::string format_double(double v) {
    if (v == std::round(v) && std::abs(v) < 1e15) return std::to_string(static_cast<long long>(v));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
  }
};

/// Blows up the origin of the fundamental form n times, each time following the
/// point left on the new divisor in chart (x, xy), and records the corner chart.
inline DesingSequence desing_sequence(int n) {
  if (n < 1) throw ArgumentError("desingularization needs n >= 1");
  if (n > 64) throw ArgumentError("desingularization depth is limited to 64");
  DesingSequence seq;
  seq.start = omega2_form();
  OneForm cur = seq.start;
  for (int k = 1; k <= n; ++k) {
    DesingStage s;
    s.k = k;
    s.divisor = blowup_chart(cur, Chart::XY_X);
    s.divisor_point = classify(s.divisor.strict, {GaussRat(0), GaussRat(0)});
    s.divisor_matches = s.divisor.strict == divisor_model(k);
    s.corner = blowup_chart(cur, Chart::XY_Y);
    s.corner_point = classify(s.corner.strict, corner_point(k - 1));
    s.corner_matches = s.corner.strict == corner_model(k - 1);
    cur = s.divisor.strict;
    seq.stages.push_back(std::move(s));
  }
  return seq;
}

struct ModelAudit {
  std::string integral;
  std::string form;
  cplx start[2];
  double drift = 0;
  std::size_t samples = 0;
  std::string status;

  json to_json() const {
    return {{"integral", integral},
            {"form", form},
            {"start", {start[0].real(), start[1].real()}},
            {"drift", drift},
            {"samples", samples},
            {"status", status}};
  }
};

enum class ModelKind { Divisor, Corner };

/// Constancy drift of F_n (divisor) or G_j (corner) along a solution of the model form.
inline ModelAudit audit_model_integrals(ModelKind kind, int index, cplx x0, cplx y0,
                                        const ToleranceSpec& tol = ToleranceSpec::uniform(1e-10), double length = 1.0) {
  if (kind == ModelKind::Corner && index < 1) throw ArgumentError("G_j is defined for j >= 1");
  OneForm w = kind == ModelKind::Divisor ? divisor_model(index) : corner_model(index);
  FirstIntegral F = kind == ModelKind::Divisor ? model_first_integral_F(index) : model_first_integral_G(index);
  std::array<cplx, 2> p0{x0, y0};
  if (auto why = F.singular(p0, default_guard)) throw DomainError("start point is singular for " + F.name() + ": " + *why);
  auto traj = flow_plane_model(PlaneForm::from_form(w), x0, y0, ArcLength{length}, tol, avoid_singular(F));
  ModelAudit a;
  a.integral = F.name();
  a.form = w.pretty();
  a.start[0] = x0;
  a.start[1] = y0;
  a.drift = audit_first_integral(F, traj);
  a.samples = traj.samples.size();
  a.status = traj.status;
  return a;
}

}  // namespace hillfol
