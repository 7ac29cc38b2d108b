#pragma once

#include <Eigen/Dense>

#include <map>

#include "hillfol/algebra/exact_linalg.hpp"
#include "hillfol/algebra/forms.hpp"

namespace hillfol {

/// Monomial basis of the polynomials in x, y of total degree <= D, ordered
/// by degree and then by descending power of x.
class PolySpace {
 public:
  explicit PolySpace(int max_degree) : D_(max_degree) {
    for (int d = 0; d <= D_; ++d)
      for (int i = d; i >= 0; --i) {
        index_[{i, d - i, 0}] = monos_.size();
        monos_.push_back({i, d - i, 0});
      }
  }

  int max_degree() const { return D_; }
  std::size_t dim() const { return monos_.size(); }
  static std::size_t dim_of(int D) { return D < 0 ? 0 : static_cast<std::size_t>((D + 1) * (D + 2) / 2); }
  const std::vector<Exponents>& monomials() const { return monos_; }
  const Exponents& monomial(std::size_t i) const { return monos_.at(i); }

  QVector to_vector(const Poly& p) const {
    QVector v(dim(), GaussRat(0));
    for (const auto& [e, c] : p.terms()) {
      auto it = index_.find(e);
      if (it == index_.end()) throw ArgumentError("polynomial " + p.pretty() + " exceeds degree " + std::to_string(D_));
      v[it->second] = c;
    }
    return v;
  }

  Poly from_vector(const QVector& v) const {
    Poly p(vars_xy());
    for (std::size_t i = 0; i < v.size() && i < dim(); ++i)
      if (!v[i].is_zero()) p.add_term(monos_[i], v[i]);
    return p;
  }

  Poly basis_poly(std::size_t i) const { return Poly::monomial(vars_xy(), monos_.at(i)); }

 private:
  int D_;
  std::vector<Exponents> monos_;
  std::map<Exponents, std::size_t> index_;
};

/// Matrix (rows in `to`, columns in `from`) of a linear map on polynomials.
template <class Map>
QMatrix operator_matrix(const PolySpace& from, const PolySpace& to, Map&& map) {
  QMatrix m(to.dim(), QVector(from.dim(), GaussRat(0)));
  for (std::size_t j = 0; j < from.dim(); ++j) {
    QVector col = to.to_vector(map(from.basis_poly(j)));
    for (std::size_t i = 0; i < to.dim(); ++i) m[i][j] = col[i];
  }
  return m;
}

/// Dual field X = (B, -A) of A dx + B dy applied to f.
inline Poly apply_dual(const OneForm& w, const Poly& f) {
  return w[1] * f.derivative(0) - w[0] * f.derivative(1);
}

/// Degree of the dual field, max(deg A, deg B).
inline int field_degree(const OneForm& w) { return std::max(w[0].degree(), w[1].degree()); }

/// Roots of c_0 + c_1 t + ... + c_n t^n (trailing zero coefficients dropped).
inline std::vector<cplx> polynomial_roots(std::vector<cplx> c) {
  while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
  if (c.size() <= 1) return {};
  std::size_t n = c.size() - 1;
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (std::size_t i = 0; i < n; ++i) comp(i, n - 1) = -c[i] / c[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  std::vector<cplx> r(es.eigenvalues().data(), es.eigenvalues().data() + n);
  return r;
}

/// Univariate polynomials over the Gaussian rationals, c_0 first.
namespace upoly {

inline QVector trim(QVector p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

/// Remainder of a / b.
inline QVector mod(QVector a, const QVector& b) {
  a = trim(std::move(a));
  while (a.size() >= b.size() && !a.empty()) {
    GaussRat f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a = trim(std::move(a));
  }
  return a;
}

inline QVector quotient(QVector a, const QVector& b) {
  a = trim(std::move(a));
  if (a.size() < b.size()) return {};
  QVector q(a.size() - b.size() + 1, GaussRat(0));
  while (a.size() >= b.size() && !a.empty()) {
    GaussRat f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a = trim(std::move(a));
  }
  return q;
}

inline QVector gcd(QVector a, QVector b) {
  a = trim(std::move(a));
  b = trim(std::move(b));
  while (!b.empty()) {
    QVector r = mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline QVector derivative(const QVector& p) {
  QVector d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * GaussRat(static_cast<long>(i)));
  return d;
}

/// p / gcd(p, p'): same roots, all simple.
inline QVector squarefree(const QVector& p) {
  QVector t = trim(p);
  if (t.size() <= 2) return t;
  QVector g = gcd(t, derivative(t));
  return g.size() <= 1 ? t : quotient(t, g);
}

inline std::vector<cplx> to_complex(const QVector& p) {
  std::vector<cplx> c;
  for (const auto& v : p) c.push_back(v.to_complex());
  return c;
}

}  // namespace upoly

/// Groups values closer than tol and returns the cluster means, sorted by
/// real then imaginary part.
inline std::vector<cplx> cluster(const std::vector<cplx>& values, double tol) {
  std::vector<std::vector<cplx>> groups;
  for (cplx v : values) {
    bool placed = false;
    for (auto& g : groups)
      if (std::abs(g.front() - v) < tol) {
        g.push_back(v);
        placed = true;
        break;
      }
    if (!placed) groups.push_back({v});
  }
  std::vector<cplx> out;
  for (const auto& g : groups) {
    cplx s = 0;
    for (cplx v : g) s += v;
    out.push_back(s / static_cast<double>(g.size()));
  }
  std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

/// Scales p so that its leading graded term has coefficient 1.
inline Poly monic(const Poly& p) {
  if (p.is_zero()) return p;
  GaussRat lead = p.terms().rbegin()->second;
  return p * (GaussRat(1) / lead);
}

}  // namespace hillfol
