#pragma once

#include <string>
#include <vector>

#include "hillfol/algebra/forms.hpp"

namespace hillfol {

/// Map between coordinate spaces, one Laurent polynomial image per source
/// variable. Rational components are restricted to monomial denominators.
class PolyMap {
 public:
  PolyMap(VarList source, std::vector<Poly> components)
      : source_(std::move(source)), comps_(std::move(components)) {
    if (comps_.size() != source_.size())
      throw ArgumentError("map needs one component per source variable");
    for (const auto& c : comps_)
      if (c.vars() != comps_.front().vars())
        throw ArgumentError("map components must share the target variables");
  }

  static PolyMap identity(const VarList& vars) {
    std::vector<Poly> c;
    for (std::size_t i = 0; i < vars.size(); ++i) c.push_back(Poly::variable(vars, i));
    return PolyMap(vars, std::move(c));
  }

  /// numerator / denominator with a monomial denominator.
  static Poly ratio(const Poly& num, const Poly& den) {
    if (den.is_zero()) throw DomainError("map denominator vanishes identically");
    if (den.size() != 1) throw ArgumentError("map denominators must be monomials");
    const auto& [e, c] = *den.terms().begin();
    return num * Poly::monomial(den.vars(), {-e[0], -e[1], -e[2]}, GaussRat(1) / c);
  }

  const VarList& source() const { return source_; }
  const VarList& target() const { return comps_.front().vars(); }
  const std::vector<Poly>& components() const { return comps_; }

  Poly apply(const Poly& f) const {
    if (f.vars() != source_) throw ArgumentError("polynomial is not over the map's source variables");
    return f.substitute(comps_);
  }

  /// this o inner: first inner, then this.
  PolyMap compose(const PolyMap& inner) const {
    if (inner.target() != source_) throw ArgumentError("maps do not compose");
    std::vector<Poly> c;
    for (const auto& comp : comps_) c.push_back(comp.substitute(inner.components()));
    return PolyMap(inner.source(), std::move(c));
  }

  std::string pretty() const {
    std::string s = "(";
    for (std::size_t i = 0; i < comps_.size(); ++i) s += (i ? ", " : "") + comps_[i].pretty();
    return s + ")";
  }

 private:
  VarList source_;
  std::vector<Poly> comps_;
};

/// phi^* alpha for forms of degree 0..3.
template <int P>
Form<P> pullback(const Form<P>& a, const PolyMap& phi) {
  if (a.vars() != phi.source()) throw ArgumentError("form is not over the map's source variables");
  const VarList& tv = phi.target();
  std::vector<OneForm> dphi;
  for (const auto& c : phi.components()) dphi.push_back(OneForm::differential(c));
  Form<P> out(tv);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    Poly coeff = phi.apply(a[i]);
    std::vector<std::size_t> idx;
    for (std::size_t v = 0; v < a.nvars(); ++v)
      if (a.basis()[i] & (1u << v)) idx.push_back(v);
    if constexpr (P == 0) {
      out[0] += coeff;
    } else if constexpr (P == 1) {
      out += coeff * dphi[idx[0]];
    } else if constexpr (P == 2) {
      out += coeff * wedge(dphi[idx[0]], dphi[idx[1]]);
    } else {
      out += coeff * wedge(dphi[idx[0]], wedge(dphi[idx[1]], dphi[idx[2]]));
    }
  }
  return out;
}

/// Multiplies a Laurent form by the smallest monomial that makes it
/// polynomial; returns the exponent used.
template <int P>
Exponents clear_denominators(Form<P>& a) {
  Exponents m = monomial_content(a);
  Exponents shift{0, 0, 0};
  for (std::size_t i = 0; i < 3; ++i) shift[i] = m[i] < 0 ? -m[i] : 0;
  a = a.shifted(shift);
  return shift;
}

}  // namespace hillfol
