#pragma once

#include <bit>
#include <string>
#include <vector>

#include "hillfol/algebra/polynomial.hpp"

namespace hillfol {

namespace detail {

/// Basis k-vectors of an n-dimensional space as bitmasks, ordered
/// lexicographically by their index lists: for n = 3, k = 2 this is
/// dx^dy, dx^dz, dy^dz.
inline std::vector<unsigned> form_basis(std::size_t n, int k) {
  std::vector<std::vector<unsigned>> lists;
  std::vector<unsigned> current;
  auto rec = [&](auto&& self, unsigned start) -> void {
    if (static_cast<int>(current.size()) == k) {
      lists.push_back(current);
      return;
    }
    for (unsigned i = start; i < n; ++i) {
      current.push_back(i);
      self(self, i + 1);
      current.pop_back();
    }
  };
  rec(rec, 0);
  std::vector<unsigned> masks;
  for (const auto& l : lists) {
    unsigned m = 0;
    for (unsigned i : l) m |= 1u << i;
    masks.push_back(m);
  }
  return masks;
}

/// Sign of dx_I ^ dx_J relative to the sorted basis element dx_{I u J}.
inline int wedge_sign(unsigned a, unsigned b) {
  int swaps = 0;
  for (unsigned j = 0; j < 3; ++j)
    if (b & (1u << j)) swaps += std::popcount(a >> (j + 1));
  return (swaps % 2) ? -1 : 1;
}

}  // namespace detail

/// Differential k-form with polynomial coefficients, one per basis element
/// in the fixed lexicographic basis order.
template <int Degree>
class Form {
  static_assert(Degree >= 0 && Degree <= 3);

 public:
  explicit Form(VarList vars) : vars_(std::move(vars)) {
    basis_ = detail::form_basis(vars_.size(), Degree);
    coeffs_.assign(basis_.size(), Poly(vars_));
  }
  Form(VarList vars, std::vector<Poly> coeffs) : Form(std::move(vars)) {
    if (coeffs.size() != basis_.size()) throw ArgumentError("wrong number of form coefficients");
    for (const auto& c : coeffs)
      if (c.vars() != vars_) throw ArgumentError("form coefficients must share the variable list");
    coeffs_ = std::move(coeffs);
  }

  /// dx_i as a 1-form.
  static Form basis_form(const VarList& vars, std::size_t i)
    requires(Degree == 1)
  {
    Form f(vars);
    f.coeffs_.at(i) = Poly::constant(vars, 1);
    return f;
  }

  /// df for a polynomial f.
  static Form differential(const Poly& f)
    requires(Degree == 1)
  {
    Form out(f.vars());
    for (std::size_t i = 0; i < f.nvars(); ++i) out.coeffs_[i] = f.derivative(i);
    return out;
  }

  const VarList& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  std::size_t size() const { return coeffs_.size(); }
  const std::vector<Poly>& coeffs() const { return coeffs_; }
  const Poly& operator[](std::size_t i) const { return coeffs_.at(i); }
  Poly& operator[](std::size_t i) { return coeffs_.at(i); }
  const std::vector<unsigned>& basis() const { return basis_; }

  /// Coefficient of the basis element with the given index bitmask.
  const Poly& component(unsigned mask) const {
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i] == mask) return coeffs_[i];
    throw ArgumentError("no such basis element");
  }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!c.is_zero()) return false;
    return true;
  }

  Form& operator+=(const Form& o) {
    require_same_vars(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  Form& operator-=(const Form& o) {
    require_same_vars(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(const Poly& f, Form a) {
    for (auto& c : a.coeffs_) c = f * c;
    return a;
  }
  friend Form operator*(const GaussRat& s, Form a) {
    for (auto& c : a.coeffs_) c *= s;
    return a;
  }
  Form operator-() const { return GaussRat(-1) * *this; }
  friend bool operator==(const Form& a, const Form& b) {
    return a.vars_ == b.vars_ && a.coeffs_ == b.coeffs_;
  }

  /// Multiplies every coefficient by the monomial x^e.
  Form shifted(const Exponents& e) const {
    Form out(vars_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = coeffs_[i].shifted(e);
    return out;
  }

  bool is_polynomial() const {
    for (const auto& c : coeffs_)
      if (!c.is_polynomial()) return false;
    return true;
  }

  std::string basis_name(std::size_t i) const {
    std::string s;
    for (std::size_t j = 0; j < vars_.size(); ++j)
      if (basis_[i] & (1u << j)) s += (s.empty() ? "d" : "^d") + vars_[j];
    return s.empty() ? "1" : s;
  }

  /// "(A) dx + (B) dy" style text with pretty coefficients.
  std::string pretty() const {
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i].is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += "(" + coeffs_[i].pretty() + ") " + basis_name(i);
    }
    return out.empty() ? "0" : out;
  }

 private:
  void require_same_vars(const Form& o) const {
    if (vars_ != o.vars_) throw ArgumentError("variable-list mismatch between forms");
  }

  VarList vars_;
  std::vector<unsigned> basis_;
  std::vector<Poly> coeffs_;
};

using OneForm = Form<1>;
using TwoForm = Form<2>;
using ThreeForm = Form<3>;

/// Vector field as one polynomial component per variable.
using VectorField = std::vector<Poly>;

template <int P, int Q>
Form<P + Q> wedge(const Form<P>& a, const Form<Q>& b) {
  if (a.vars() != b.vars()) throw ArgumentError("wedge of forms over different variables");
  if (P + Q > static_cast<int>(a.nvars()))
    throw ArgumentError("wedge degree exceeds the dimension");
  Form<P + Q> out(a.vars());
  const auto& target = out.basis();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      unsigned ma = a.basis()[i], mb = b.basis()[j];
      if (ma & mb) continue;
      std::size_t k = 0;
      while (target[k] != (ma | mb)) ++k;
      Poly term = a[i] * b[j];
      if (detail::wedge_sign(ma, mb) < 0) out[k] -= term;
      else out[k] += term;
    }
  }
  return out;
}

/// Exterior derivative.
template <int P>
Form<P + 1> exterior_derivative(const Form<P>& a) {
  if (P + 1 > static_cast<int>(a.nvars())) throw ArgumentError("exterior derivative exceeds the dimension");
  Form<P + 1> out(a.vars());
  const auto& target = out.basis();
  for (std::size_t i = 0; i < a.size(); ++i) {
    unsigned mi = a.basis()[i];
    for (std::size_t v = 0; v < a.nvars(); ++v) {
      unsigned mv = 1u << v;
      if (mi & mv) continue;
      Poly dc = a[i].derivative(v);
      if (dc.is_zero()) continue;
      std::size_t k = 0;
      while (target[k] != (mi | mv)) ++k;
      if (detail::wedge_sign(mv, mi) < 0) out[k] -= dc;
      else out[k] += dc;
    }
  }
  return out;
}

/// d of a function.
inline OneForm exterior_derivative(const Poly& f) { return OneForm::differential(f); }

/// alpha(X) = sum_i A_i f_i.
inline Poly contract(const OneForm& a, const VectorField& field) {
  if (field.size() != a.nvars()) throw ArgumentError("vector field dimension mismatch");
  Poly out(a.vars());
  for (std::size_t i = 0; i < a.nvars(); ++i) out += a[i] * field[i];
  return out;
}

/// alpha ^ d alpha for a 1-form in three variables; zero iff alpha is
/// Frobenius-integrable.
inline ThreeForm integrability_defect(const OneForm& a) {
  if (a.nvars() != 3) throw ArgumentError("integrability defect needs three variables");
  return wedge(a, exterior_derivative(a));
}

/// Exact quotient of every coefficient by the monomial x^e.
inline OneForm divide_out(const OneForm& a, const Exponents& e) {
  std::vector<Poly> q;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Exponents bad{};
    auto r = a[i].divide_monomial(e, &bad);
    if (!r) {
      Poly mono = Poly::monomial(a.vars(), e);
      Poly term = Poly::monomial(a.vars(), bad, a[i].coeff(bad));
      throw ArgumentError("monomial " + mono.pretty() + " does not divide term " + term.pretty() +
                          " of the " + a.basis_name(i) + " coefficient");
    }
    q.push_back(std::move(*r));
  }
  return OneForm(a.vars(), std::move(q));
}

/// Largest monomial dividing every coefficient of the form.
template <int P>
Exponents monomial_content(const Form<P>& a) {
  bool first = true;
  Exponents m{0, 0, 0};
  for (const auto& c : a.coeffs()) {
    if (c.is_zero()) continue;
    Exponents e = c.min_exponents();
    if (first) m = e;
    else
      for (std::size_t i = 0; i < 3; ++i) m[i] = std::min(m[i], e[i]);
    first = false;
  }
  return m;
}

}  // namespace hillfol
