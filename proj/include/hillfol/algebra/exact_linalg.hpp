#pragma once

#include <optional>
#include <vector>

#include "hillfol/algebra/gauss_rational.hpp"

namespace hillfol {

using QVector = std::vector<GaussRat>;
using QMatrix = std::vector<QVector>;

struct Rref {
  QMatrix rows;                       // reduced rows, zero rows dropped
  std::vector<std::size_t> pivots;    // pivot column of each row
};

/// Reduced row echelon form. Rows of `m` must all have `ncols` entries.
inline Rref rref(QMatrix m, std::size_t ncols) {
  Rref out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[r], m[p]);
    GaussRat inv = GaussRat(1) / m[r][c];
    for (std::size_t k = c; k < ncols; ++k)
      if (!m[r][k].is_zero()) m[r][k] *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      GaussRat f = m[i][c];
      for (std::size_t k = c; k < ncols; ++k)
        if (!m[r][k].is_zero()) m[i][k] -= f * m[r][k];
    }
    out.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

inline std::size_t rank(const QMatrix& m, std::size_t ncols) { return rref(m, ncols).pivots.size(); }

/// Basis of {v : m v = 0}, one vector per free column, in column order.
inline std::vector<QVector> nullspace(const QMatrix& m, std::size_t ncols) {
  Rref r = rref(m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<QVector> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    QVector v(ncols, GaussRat(0));
    v[f] = 1;
    for (std::size_t i = 0; i < r.rows.size(); ++i) v[r.pivots[i]] = -r.rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solution of m x = b with every free variable set to zero, or nullopt when
/// the system is inconsistent.
inline std::optional<QVector> solve(const QMatrix& m, const QVector& b, std::size_t ncols) {
  QMatrix aug = m;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b.at(i));
  Rref r = rref(std::move(aug), ncols + 1);
  QVector x(ncols, GaussRat(0));
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    if (r.pivots[i] == ncols) return std::nullopt;
    x[r.pivots[i]] = r.rows[i][ncols];
  }
  return x;
}

inline GaussRat hdot(const QVector& a, const QVector& b) {
  GaussRat s(0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i].conj() * b[i];
  return s;
}

/// Minimum Hermitian-norm solution of m x = b, exact.
inline std::optional<QVector> solve_min_norm(const QMatrix& m, const QVector& b, std::size_t ncols) {
  auto x = solve(m, b, ncols);
  if (!x) return std::nullopt;
  auto ker = nullspace(m, ncols);
  if (ker.empty()) return x;
  // Project x onto the orthogonal complement of the kernel: solve the Gram
  // system G c = N^H x and subtract N c.
  std::size_t k = ker.size();
  QMatrix gram(k, QVector(k));
  QVector rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) gram[i][j] = hdot(ker[i], ker[j]);
    rhs[i] = hdot(ker[i], *x);
  }
  auto c = solve(gram, rhs, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t t = 0; t < ncols; ++t)
      if (!ker[i][t].is_zero()) (*x)[t] -= (*c)[i] * ker[i][t];
  return x;
}

inline QMatrix matmul(const QMatrix& a, const QMatrix& b) {
  std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size();
  QMatrix c(n, QVector(m, GaussRat(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!b[k][j].is_zero()) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

/// Characteristic polynomial det(t I - a) by Faddeev-LeVerrier; returns
/// coefficients c_0..c_n with c_n = 1.
inline QVector charpoly(const QMatrix& a) {
  std::size_t n = a.size();
  QVector c(n + 1, GaussRat(0));
  c[n] = 1;
  if (n == 0) return c;
  QMatrix mk(n, QVector(n, GaussRat(0)));  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t i = 0; i < n; ++i) mk[i][i] += c[n - k + 1];
    mk = matmul(a, mk);
    GaussRat tr(0);
    for (std::size_t i = 0; i < n; ++i) tr += mk[i][i];
    c[n - k] = -tr / GaussRat(static_cast<long>(k));
  }
  return c;
}

}  // namespace hillfol
