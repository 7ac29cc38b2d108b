#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hillfol/algebra/gauss_rational.hpp"
#include "hillfol/core/errors.hpp"

namespace hillfol {

/// Exponent vector. Unused trailing slots stay zero. Negative entries are
/// allowed only transiently (Laurent monomials produced by pull-backs through
/// maps with monomial denominators).
using Exponents = std::array<int, 3>;

inline int total_degree(const Exponents& e) { return e[0] + e[1] + e[2]; }

/// Graded lexicographic order, ascending: lower total degree first, then lex
/// on (x, y, z).
struct GradedLex {
  bool operator()(const Exponents& a, const Exponents& b) const {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
  }
};

using VarList = std::vector<std::string>;

inline const VarList& vars_xy() {
  static const VarList v{"x", "y"};
  return v;
}
inline const VarList& vars_xyz() {
  static const VarList v{"x", "y", "z"};
  return v;
}

/// Sparse multivariate (Laurent) polynomial over Q(i) in 2 or 3 named
/// variables. No zero coefficient is ever stored, so equality is syntactic.
class Poly {
 public:
  using TermMap = std::map<Exponents, GaussRat, GradedLex>;

  Poly() : Poly(vars_xy()) {}
  explicit Poly(VarList vars) : vars_(std::move(vars)) {
    if (vars_.size() < 1 || vars_.size() > 3)
      throw ArgumentError("polynomials carry 1 to 3 variables");
  }

  static Poly constant(const VarList& vars, const GaussRat& c) {
    Poly p(vars);
    p.add_term({0, 0, 0}, c);
    return p;
  }
  static Poly monomial(const VarList& vars, const Exponents& e, const GaussRat& c = 1) {
    Poly p(vars);
    p.check_exponents(e);
    p.add_term(e, c);
    return p;
  }
  static Poly variable(const VarList& vars, std::size_t index) {
    if (index >= vars.size()) throw ArgumentError("variable index out of range");
    Exponents e{0, 0, 0};
    e[index] = 1;
    return monomial(vars, e);
  }
  static Poly variable(const VarList& vars, const std::string& name) {
    return variable(vars, index_of(vars, name));
  }

  static std::size_t index_of(const VarList& vars, const std::string& name) {
    auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end()) throw ArgumentError("unknown variable '" + name + "'");
    return static_cast<std::size_t>(it - vars.begin());
  }

  const VarList& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents{0, 0, 0});
  }

  GaussRat coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? GaussRat{} : it->second;
  }

  /// Total degree; -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : total_degree(terms_.rbegin()->first); }

  int degree_in(std::size_t var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
  }

  /// Componentwise minimum exponent over all terms (zero vector if empty).
  Exponents min_exponents() const {
    if (terms_.empty()) return {0, 0, 0};
    Exponents m = terms_.begin()->first;
    for (const auto& [e, c] : terms_)
      for (std::size_t i = 0; i < 3; ++i) m[i] = std::min(m[i], e[i]);
    return m;
  }

  bool is_polynomial() const {
    auto m = min_exponents();
    return m[0] >= 0 && m[1] >= 0 && m[2] >= 0;
  }

  Poly homogeneous_part(int d) const {
    Poly out(vars_);
    for (const auto& [e, c] : terms_)
      if (total_degree(e) == d) out.terms_.emplace(e, c);
    return out;
  }

  void add_term(const Exponents& e, const GaussRat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Poly operator-() const {
    Poly out(vars_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
  }
  Poly& operator+=(const Poly& o) {
    require_same_vars(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    require_same_vars(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Poly& operator*=(const GaussRat& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const GaussRat& s) { return a *= s; }
  friend Poly operator*(const GaussRat& s, Poly a) { return a *= s; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.require_same_vars(b);
    Poly out(a.vars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_)
        out.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    return out;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  Poly pow(unsigned k) const {
    Poly out = constant(vars_, 1);
    for (unsigned i = 0; i < k; ++i) out *= *this;
    return out;
  }

  /// Multiplies by the monomial with exponent vector e (Laurent shift).
  Poly shifted(const Exponents& e) const {
    Poly out(vars_);
    for (const auto& [t, c] : terms_) out.terms_.emplace(Exponents{t[0] + e[0], t[1] + e[1], t[2] + e[2]}, c);
    return out;
  }

  Poly derivative(std::size_t var) const {
    if (var >= nvars()) throw ArgumentError("derivative variable out of range");
    Poly out(vars_);
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exponents d = e;
      d[var] -= 1;
      out.add_term(d, c * GaussRat(e[var]));
    }
    return out;
  }
  Poly derivative(const std::string& name) const { return derivative(index_of(vars_, name)); }

  cplx evaluate(std::span<const cplx> point) const {
    if (point.size() != nvars()) throw ArgumentError("evaluation point has wrong dimension");
    cplx sum = 0.0;
    for (const auto& [e, c] : terms_) {
      cplx t = c.to_complex();
      for (std::size_t i = 0; i < nvars(); ++i)
        if (e[i] != 0) t *= std::pow(point[i], e[i]);
      sum += t;
    }
    return sum;
  }
  cplx operator()(std::initializer_list<cplx> point) const {
    return evaluate(std::span<const cplx>(point.begin(), point.size()));
  }

  GaussRat evaluate_exact(std::span<const GaussRat> point) const {
    if (point.size() != nvars()) throw ArgumentError("evaluation point has wrong dimension");
    GaussRat sum;
    for (const auto& [e, c] : terms_) {
      GaussRat t = c;
      for (std::size_t i = 0; i < nvars(); ++i) {
        if (e[i] < 0) {
          if (point[i].is_zero()) throw DomainError("Laurent term evaluated at zero");
          for (int k = 0; k < -e[i]; ++k) t /= point[i];
        }
        for (int k = 0; k < e[i]; ++k) t *= point[i];
      }
      sum += t;
    }
    return sum;
  }

  /// Substitutes images[i] for variable i. Images share one target variable
  /// list. A negative exponent requires a monomial image, which is inverted.
  Poly substitute(const std::vector<Poly>& images) const {
    if (images.size() != nvars()) throw ArgumentError("substitution needs one image per variable");
    const VarList& target = images.front().vars();
    for (const auto& im : images)
      if (im.vars() != target) throw ArgumentError("substitution images must share variables");
    Poly out(target);
    std::vector<std::map<int, Poly>> cache(nvars());
    auto power = [&](std::size_t var, int k) -> const Poly& {
      auto it = cache[var].find(k);
      if (it != cache[var].end()) return it->second;
      Poly base = images[var];
      if (k < 0) {
        if (base.size() != 1)
          throw DomainError("negative power of a non-monomial image in substitution");
        const auto& [e, c] = *base.terms().begin();
        base = monomial(target, {-e[0], -e[1], -e[2]}, GaussRat(1) / c);
      }
      return cache[var].emplace(k, base.pow(static_cast<unsigned>(std::abs(k)))).first->second;
    };
    for (const auto& [e, c] : terms_) {
      Poly t = constant(target, c);
      for (std::size_t i = 0; i < nvars(); ++i)
        if (e[i] != 0) t *= power(i, e[i]);
      out += t;
    }
    return out;
  }

  /// Re-expresses the polynomial over a larger variable list that contains
  /// all of the current names.
  Poly embed(const VarList& target) const {
    Poly out(target);
    std::vector<std::size_t> map;
    for (const auto& v : vars_) map.push_back(index_of(target, v));
    for (const auto& [e, c] : terms_) {
      Exponents t{0, 0, 0};
      for (std::size_t i = 0; i < nvars(); ++i) t[map[i]] += e[i];
      out.terms_.emplace(t, c);
    }
    return out;
  }

  /// Exact quotient by the monomial x^e, or nullopt when some term is not
  /// divisible (the first such term is reported through `offending`).
  std::optional<Poly> divide_monomial(const Exponents& e, Exponents* offending = nullptr) const {
    Poly out(vars_);
    for (const auto& [t, c] : terms_) {
      Exponents q{t[0] - e[0], t[1] - e[1], t[2] - e[2]};
      if (q[0] < 0 || q[1] < 0 || q[2] < 0) {
        if (offending) *offending = t;
        return std::nullopt;
      }
      out.terms_.emplace(q, c);
    }
    return out;
  }

  /// Exact division by a polynomial divisor; nullopt unless the remainder is
  /// zero. Uses the graded-lex leading term, so it is a complete test for
  /// exact divisibility.
  std::optional<Poly> divide_exact(const Poly& divisor) const {
    require_same_vars(divisor);
    if (divisor.is_zero()) throw DomainError("division by the zero polynomial");
    Poly rem = *this;
    Poly quot(vars_);
    const auto& [lead_e, lead_c] = *divisor.terms_.rbegin();
    while (!rem.is_zero()) {
      const auto& [re, rc] = *rem.terms_.rbegin();
      Exponents q{re[0] - lead_e[0], re[1] - lead_e[1], re[2] - lead_e[2]};
      if (q[0] < 0 || q[1] < 0 || q[2] < 0) return std::nullopt;
      GaussRat qc = rc / lead_c;
      quot.add_term(q, qc);
      rem -= divisor.shifted(q) * qc;
    }
    return quot;
  }

  /// Canonical serialization: terms from highest graded-lex to lowest,
  /// "coeff x^a y^b" joined by " + "; "0" for the zero polynomial.
  std::string serialize() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!out.empty()) out += " + ";
      out += it->second.serialize();
      for (std::size_t i = 0; i < nvars(); ++i)
        if (it->first[i] != 0) out += " " + vars_[i] + "^" + std::to_string(it->first[i]);
    }
    return out;
  }

  /// Human-readable form, e.g. "x^2 + 2*x*y - 1/2". Accepted by parse_poly.
  std::string pretty() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      GaussRat c = it->second;
      bool negative = c.is_real() && sgn(c.re()) < 0;
      if (negative) c = -c;
      std::string mono;
      for (std::size_t i = 0; i < nvars(); ++i) {
        int k = it->first[i];
        if (k == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += vars_[i];
        if (k != 1) mono += "^" + (k < 0 ? "(" + std::to_string(k) + ")" : std::to_string(k));
      }
      std::string term;
      if (mono.empty()) term = c.pretty();
      else if (c.is_one()) term = mono;
      else term = c.pretty() + "*" + mono;
      if (out.empty()) out = negative ? "-" + term : term;
      else out += (negative ? " - " : " + ") + term;
    }
    return out;
  }

 private:
  void check_exponents(const Exponents& e) const {
    for (std::size_t i = nvars(); i < 3; ++i)
      if (e[i] != 0) throw ArgumentError("exponent vector longer than variable list");
  }
  void require_same_vars(const Poly& o) const {
    if (vars_ != o.vars_) throw ArgumentError("variable-list mismatch between polynomials");
  }

  VarList vars_;
  TermMap terms_;
};

}  // namespace hillfol
