#pragma once

#include <random>
#include <set>

#include "hillfol/integrability/poly_space.hpp"
#include "hillfol/models/periodic_coeff.hpp"

namespace hillfol {

struct DarbouxPair {
  Poly f;
  Poly K;
};

/// A linear space of invariant polynomials sharing one cofactor, e.g. the
/// pencil of invariant lines of a radial field.
struct DarbouxFamily {
  std::vector<Poly> basis;
  Poly K;
  int degree;
};

struct DarbouxResult {
  int dmax = 0;
  std::vector<DarbouxPair> pairs;        // isolated irreducible curves
  std::vector<DarbouxFamily> families;   // non-isolated families
  std::vector<std::string> uncertified;  // numeric candidates that failed exact certification
  bool exhaustive = true;
  std::vector<std::string> notes;

  /// Isolated curves followed by the non-constant members of each family basis.
  std::vector<DarbouxPair> all_pairs() const {
    std::vector<DarbouxPair> out = pairs;
    for (const auto& fam : families)
      for (const auto& f : fam.basis)
        if (f.degree() > 0) out.push_back({f, fam.K});
    return out;
  }

  json to_json() const {
    json ps = json::array(), fs = json::array();
    for (const auto& p : pairs) ps.push_back({{"f", p.f.pretty()}, {"K", p.K.pretty()}, {"degree", p.f.degree()}});
    for (const auto& fam : families) {
      json b = json::array();
      for (const auto& f : fam.basis) b.push_back(f.pretty());
      fs.push_back({{"basis", b}, {"K", fam.K.pretty()}, {"degree", fam.degree}, {"kind", "non-isolated family"}});
    }
    return {{"dmax", dmax}, {"curves", ps}, {"families", fs}, {"uncertified", uncertified},
            {"exhaustive", exhaustive}, {"notes", notes}};
  }
};

/// X(f) - K f == 0 by exact arithmetic.
inline bool is_darboux_pair(const OneForm& w, const Poly& f, const Poly& K) {
  return (apply_dual(w, f) - K * f).is_zero();
}

namespace detail {

using BinaryForm = std::vector<cplx>;  // c_i is the coefficient of x^i y^{k-i}

inline BinaryForm to_binary(const Poly& h, int k) {
  BinaryForm b(k + 1, 0.0);
  for (const auto& [e, c] : h.terms())
    if (e[0] + e[1] == k) b[e[0]] = c.to_complex();
  return b;
}

/// h / (a x + b y) for a form h divisible by it.
inline BinaryForm divide_linear(const BinaryForm& h, cplx a, cplx b) {
  int k = static_cast<int>(h.size()) - 1;
  BinaryForm q(k, 0.0);
  if (std::abs(b) > 0) {
    for (int i = 0; i < k; ++i) q[i] = (h[i] - (i > 0 ? a * q[i - 1] : 0.0)) / b;
  } else {
    for (int i = 0; i < k; ++i) q[i] = h[i + 1] / a;
  }
  return q;
}

struct Line {
  cplx a, b;         // a x + b y
  BinaryForm cofactor;
};

/// Invariant lines through the origin of the homogeneous field (P, Q) of
/// degree m: a x + b y is invariant iff T(a, b) = a P(b, -a) + b Q(b, -a) = 0.
inline std::vector<Line> invariant_lines(const Poly& P, const Poly& Q, int m, const Poly& T) {
  QVector tq(m + 2, GaussRat(0));  // coefficient of a^i b^{m+1-i}
  for (const auto& [e, c] : T.terms()) tq[e[0]] = c;
  std::vector<Line> lines;
  auto add = [&](cplx a, cplx b) {
    BinaryForm h = to_binary(P, m), g = to_binary(Q, m);
    for (int i = 0; i <= m; ++i) h[i] = a * h[i] + b * g[i];
    lines.push_back({a, b, divide_linear(h, a, b)});
  };
  if (tq[m + 1].is_zero()) add(1.0, 0.0);
  for (cplx r : cluster(polynomial_roots(upoly::to_complex(upoly::squarefree(tq))), 1e-6)) add(r, 1.0);
  return lines;
}

inline void compositions(int parts, int total, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == parts - 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int e = total; e >= 0; --e) {
    cur.push_back(e);
    compositions(parts, total - e, cur, out);
    cur.pop_back();
  }
}

inline std::optional<Poly> reconstruct_form(const BinaryForm& c, int k) {
  Poly p(vars_xy());
  for (int i = 0; i <= k; ++i) {
    if (std::abs(c[i]) < 1e-10) continue;
    auto g = reconstruct_gauss(c[i], 1e-8, 10000);
    if (!g) return std::nullopt;
    p.add_term({i, k - i, 0}, *g);
  }
  return p;
}

/// Candidate top-degree cofactors for invariant polynomials of degree d.
inline std::vector<Poly> top_cofactors(const OneForm& w, int m, int d, std::vector<std::string>& uncertified) {
  Poly P = w[1].homogeneous_part(m), Q = -w[0].homogeneous_part(m);
  Poly x = Poly::variable(vars_xy(), 0), y = Poly::variable(vars_xy(), 1);
  Poly T = x * P.substitute({y, -x}) + y * Q.substitute({y, -x});
  std::vector<Poly> out;
  if (T.is_zero()) {
    // radial: (P, Q) = g (x, y)
    auto g = P.divide_monomial({1, 0, 0});
    out.push_back(*g * GaussRat(d));
    return out;
  }
  auto lines = invariant_lines(P, Q, m, T);
  std::vector<std::vector<int>> comps;
  std::vector<int> cur;
  compositions(static_cast<int>(lines.size()), d, cur, comps);
  std::set<std::string> seen;
  for (const auto& e : comps) {
    BinaryForm k(m, 0.0);
    for (std::size_t l = 0; l < lines.size(); ++l)
      for (int i = 0; i < m; ++i) k[i] += static_cast<double>(e[l]) * lines[l].cofactor[i];
    auto K = reconstruct_form(k, m - 1);
    if (!K) {
      uncertified.push_back("degree " + std::to_string(d) + ": top cofactor with irrational coefficients");
      continue;
    }
    if (seen.insert(K->serialize()).second) out.push_back(*K);
  }
  return out;
}

/// Largest subspace of P_{<=d} mapped into itself by f -> X(f) - K_top f
/// (m = 2), and the eigenvalues of the restriction; each reconstructed
/// eigenvalue k0 gives a cofactor K_top + k0.
inline std::vector<Poly> constant_shifts(const OneForm& w, const Poly& Ktop, int d, std::vector<std::string>& uncertified) {
  PolySpace from(d), to(d + 1);
  QMatrix T = operator_matrix(from, to, [&](const Poly& f) { return apply_dual(w, f) - Ktop * f; });
  std::size_t n = from.dim();
  QMatrix C;  // constraints on P_{<=d} cutting out W
  for (std::size_t i = n; i < to.dim(); ++i) C.push_back(T[i]);
  std::size_t r = rank(C, n);
  while (true) {
    QMatrix next = C;
    for (const auto& row : C) {
      QVector composed(n, GaussRat(0));
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (!row[k].is_zero() && !T[k][j].is_zero()) composed[j] += row[k] * T[k][j];
      next.push_back(composed);
    }
    std::size_t r2 = rank(next, n);
    C = rref(next, n).rows;
    if (r2 == r) break;
    r = r2;
  }
  auto W = nullspace(C, n);
  if (W.empty()) return {};
  // coordinates of a vector of W are its entries at the free columns
  Rref rc = rref(C, n);
  std::vector<bool> pivot(n, false);
  for (auto p : rc.pivots) pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < n; ++j)
    if (!pivot[j]) free_cols.push_back(j);
  std::size_t k = W.size();
  QMatrix A(k, QVector(k, GaussRat(0)));
  for (std::size_t c = 0; c < k; ++c) {
    QVector img(n, GaussRat(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!T[i][j].is_zero() && !W[c][j].is_zero()) img[i] += T[i][j] * W[c][j];
    for (std::size_t rr = 0; rr < k; ++rr) A[rr][c] = img[free_cols[rr]];
  }
  QVector cp = charpoly(A);
  std::vector<Poly> out;
  for (cplx root : cluster(polynomial_roots(upoly::to_complex(upoly::squarefree(cp))), 1e-6)) {
    auto k0 = reconstruct_gauss(root, 1e-7, 10000);
    if (!k0) {
      uncertified.push_back("degree " + std::to_string(d) + ": eigenvalue " + std::to_string(root.real()) +
                            (root.imag() >= 0 ? "+" : "") + std::to_string(root.imag()) + "i did not reconstruct");
      continue;
    }
    // exact check: k0 is a root of the characteristic polynomial
    GaussRat v(0), pw(1);
    for (const auto& c : cp) {
      v += c * pw;
      pw *= *k0;
    }
    if (!v.is_zero()) {
      uncertified.push_back("degree " + std::to_string(d) + ": eigenvalue " + k0->pretty() + " failed exact check");
      continue;
    }
    out.push_back(Ktop + Poly::constant(vars_xy(), *k0));
  }
  return out;
}

/// Gauss-Newton multi-start on X(f) = (K_top + K_low) f with a random
/// normalization of f, for fields of degree >= 3. Not exhaustive.
inline std::vector<Poly> lower_cofactors_numeric(const OneForm& w, const Poly& Ktop, int m, int d,
                                                 std::uint64_t seed, std::vector<std::string>& uncertified) {
  PolySpace from(d), to(d + m - 1), low(m - 2);
  std::size_t nf = from.dim(), nk = low.dim(), nr = to.dim();
  auto toC = [](const QMatrix& q) {
    Eigen::MatrixXcd M(q.size(), q.empty() ? 0 : q[0].size());
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = 0; j < q[i].size(); ++j) M(i, j) = q[i][j].to_complex();
    return M;
  };
  Eigen::MatrixXcd X0 = toC(operator_matrix(from, to, [&](const Poly& f) { return apply_dual(w, f) - Ktop * f; }));
  std::vector<Eigen::MatrixXcd> mult;  // multiplication by each low monomial
  for (std::size_t j = 0; j < nk; ++j)
    mult.push_back(toC(operator_matrix(from, to, [&](const Poly& f) { return low.basis_poly(j) * f; })));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::VectorXcd c(nf);
  for (std::size_t i = 0; i < nf; ++i) c[i] = cplx(g(rng), g(rng));
  std::vector<Poly> out;
  std::set<std::string> seen;
  for (int start = 0; start < 40; ++start) {
    Eigen::VectorXcd f(nf), k(nk);
    for (std::size_t i = 0; i < nf; ++i) f[i] = cplx(g(rng), g(rng));
    for (std::size_t i = 0; i < nk; ++i) k[i] = cplx(g(rng), g(rng));
    bool ok = false;
    for (int it = 0; it < 60; ++it) {
      Eigen::MatrixXcd M = X0;
      for (std::size_t j = 0; j < nk; ++j) M -= k[j] * mult[j];
      Eigen::VectorXcd r(nr + 1);
      r.head(nr) = M * f;
      r[nr] = c.dot(f) - 1.0;
      if (r.norm() < 1e-12) {
        ok = true;
        break;
      }
      Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(nr + 1, nf + nk);
      J.topLeftCorner(nr, nf) = M;
      J.block(nr, 0, 1, nf) = c.adjoint();
      for (std::size_t j = 0; j < nk; ++j) J.block(0, nf + j, nr, 1) = -mult[j] * f;
      Eigen::VectorXcd step = J.completeOrthogonalDecomposition().solve(-r);
      f += step.head(nf);
      k += step.tail(nk);
      if (!std::isfinite(step.norm())) break;
    }
    if (!ok) continue;
    Poly K = Ktop;
    bool rec = true;
    for (std::size_t j = 0; j < nk && rec; ++j) {
      if (std::abs(k[j]) < 1e-9) continue;
      auto q = reconstruct_gauss(k[j], 1e-7, 10000);
      if (!q) rec = false;
      else K += low.basis_poly(j) * *q;
    }
    if (!rec) {
      uncertified.push_back("degree " + std::to_string(d) + ": numeric cofactor did not reconstruct");
      continue;
    }
    if (seen.insert(K.serialize()).second) out.push_back(K);
  }
  return out;
}

inline QMatrix transpose_rows(const std::vector<QVector>& cols, std::size_t n) {
  QMatrix m(n, QVector(cols.size(), GaussRat(0)));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) m[i][j] = cols[j][i];
  return m;
}

}  // namespace detail

struct DarbouxOptions {
  std::uint64_t seed = 1;
};

/// Invariant algebraic curves f = 0 of A dx + B dy with deg f <= dmax,
/// X(f) = K f for the dual field X = (B, -A). Cofactor candidates come from
/// the invariant lines of the top-degree part of X; for fields of degree 2 the
/// constant part of K is an eigenvalue of X - K_top on its largest invariant
/// subspace of P_{<=d}; for degree >= 3 it is found by Gauss-Newton
/// multi-start and the search is flagged non-exhaustive. Every reported
/// curve is certified by exact arithmetic.
inline DarbouxResult darboux_search(const OneForm& w, int dmax, const DarbouxOptions& opt = {}) {
  if (w.nvars() != 2) throw ArgumentError("Darboux search needs a form in two variables");
  if (w.is_zero()) throw ArgumentError("zero form");
  if (!w.is_polynomial()) throw ArgumentError("form coefficients must be polynomial");
  if (dmax < 1 || dmax > 6) throw ArgumentError("dmax must lie in 1..6");
  DarbouxResult res;
  res.dmax = dmax;
  res.notes.push_back("affine search only: the line at infinity is not examined");
  res.notes.push_back("completeness holds for degrees <= " + std::to_string(dmax));
  int m = field_degree(w);
  if (m >= 3) {
    res.exhaustive = false;
    res.notes.push_back("field degree >= 3: lower cofactor terms found by multi-start Gauss-Newton, not exhaustive");
  }
  struct Known {
    Poly f, K;
  };
  std::vector<Known> known;
  for (int d = 1; d <= dmax; ++d) {
    std::vector<Poly> cands;
    if (m == 0) {
      cands.push_back(Poly(vars_xy()));
    } else {
      for (const Poly& Kt : detail::top_cofactors(w, m, d, res.uncertified)) {
        if (m == 1) cands.push_back(Kt);
        else if (m == 2)
          for (auto& K : detail::constant_shifts(w, Kt, d, res.uncertified)) cands.push_back(K);
        else
          for (auto& K : detail::lower_cofactors_numeric(w, Kt, m, d, opt.seed + d, res.uncertified)) cands.push_back(K);
      }
    }
    std::set<std::string> done;
    PolySpace from(d), to(d + std::max(m, 1) - 1);
    for (const Poly& K : cands) {
      if (!done.insert(K.serialize()).second) continue;
      QMatrix M = operator_matrix(from, to, [&](const Poly& f) { return apply_dual(w, f) - K * f; });
      auto N = nullspace(M, from.dim());
      std::size_t lower = PolySpace::dim_of(d - 1);
      std::vector<QVector> old;
      for (const auto& v : N) {
        bool low = true;
        for (std::size_t i = lower; i < v.size(); ++i)
          if (!v[i].is_zero()) low = false;
        if (low) old.push_back(v);
      }
      if (old.size() == N.size()) continue;  // nothing of exact degree d
      // products of known invariants with matching cofactor
      std::vector<std::size_t> pick;
      auto rec = [&](auto&& self, std::size_t start, int deg, const Poly& prod, const Poly& cof) -> void {
        if (deg > 0 && cof == K) old.push_back(from.to_vector(prod));
        for (std::size_t i = start; i < known.size(); ++i) {
          int dd = deg + known[i].f.degree();
          if (dd > d) continue;
          self(self, i, dd, prod * known[i].f, cof + known[i].K);
        }
      };
      rec(rec, 0, 0, Poly::constant(vars_xy(), 1), Poly(vars_xy()));
      if (K.is_zero()) old.push_back(from.to_vector(Poly::constant(vars_xy(), 1)));
      std::size_t old_dim = old.empty() ? 0 : rank(detail::transpose_rows(old, from.dim()), old.size());
      std::size_t new_dim = N.size() - old_dim;
      if (new_dim == 0) continue;
      if (new_dim == 1 && old_dim == 0 && !K.is_zero()) {
        Poly f = monic(from.from_vector(N[0]));
        if (!is_darboux_pair(w, f, K)) throw ConvergenceError("internal: certification of " + f.pretty() + " failed");
        res.pairs.push_back({f, K});
        known.push_back({f, K});
      } else {
        DarbouxFamily fam{{}, K, d};
        for (const auto& v : N) fam.basis.push_back(monic(from.from_vector(v)));
        for (const auto& f : fam.basis)
          if (f.degree() > 0) known.push_back({f, K});
        res.families.push_back(std::move(fam));
      }
    }
  }
  return res;
}

}  // namespace hillfol
