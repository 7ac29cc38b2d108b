#pragma once

#include <sstream>

#include "hillfol/integrability/darboux.hpp"

namespace hillfol {

/// eta = sum_i lambda_i df_i / f_i + d(Q / prod f_i^{n_i}).
struct SingerWitness {
  std::vector<Poly> curves;
  std::vector<GaussRat> lambdas;
  std::vector<int> exponents;
  Poly Q;
  OneForm numerator{vars_xy()};  // eta = numerator / denominator
  Poly denominator;
  bool closed = false;         // d eta = 0
  bool satisfies_relation = false;  // d omega = eta ^ omega
};

struct SingerCertificate {
  bool found = false;
  int nmax = 0;
  int qmax = 0;
  int dmax = 0;
  std::vector<Poly> curves;
  std::optional<SingerWitness> witness;
  std::vector<std::string> transcript;
  std::vector<std::string> notes;

  std::string outcome() const { return found ? "witness" : "no witness"; }

  json to_json() const {
    json cs = json::array();
    for (const auto& c : curves) cs.push_back(c.pretty());
    json j{{"outcome", outcome()}, {"nmax", nmax}, {"qmax", qmax}, {"dmax", dmax}, {"curves", cs},
           {"transcript", transcript}, {"notes", notes}};
    if (witness) {
      json lam = json::array();
      for (const auto& l : witness->lambdas) lam.push_back(l.pretty());
      j["witness"] = {{"lambda", lam},
                      {"exponents", witness->exponents},
                      {"Q", witness->Q.pretty()},
                      {"eta", {{"dx", witness->numerator[0].pretty()},
                               {"dy", witness->numerator[1].pretty()},
                               {"denominator", witness->denominator.pretty()}}},
                      {"closed", witness->closed},
                      {"relation", witness->satisfies_relation}};
    }
    return j;
  }
};

namespace detail {

inline std::vector<std::vector<int>> exponent_tuples(std::size_t r, int nmax) {
  std::vector<std::vector<int>> out;
  for (int total = 0; total <= nmax; ++total) {
    if (r == 0) {
      if (total == 0) out.push_back({});
      continue;
    }
    std::vector<std::vector<int>> comps;
    std::vector<int> cur;
    compositions(static_cast<int>(r), total, cur, comps);
    std::reverse(comps.begin(), comps.end());
    for (auto& c : comps) out.push_back(std::move(c));
  }
  return out;
}

struct SingerSystem {
  QMatrix M;
  QVector rhs;
  std::size_t ncols;
  PolySpace rows;
  PolySpace qspace;
  std::size_t nlambda;
};

/// D (delta - sum lambda_i K_i) = X(Q) - Q sum n_i K_i as M u = rhs with
/// u = (lambda, coefficients of Q).
inline SingerSystem singer_system(const OneForm& w, const std::vector<DarbouxPair>& curves, const std::vector<int>& n,
                                  int q) {
  Poly delta = w[1].derivative(0) - w[0].derivative(1);
  Poly D = Poly::constant(vars_xy(), 1), S(vars_xy());
  for (std::size_t i = 0; i < curves.size(); ++i) {
    D *= curves[i].f.pow(n[i]);
    S += curves[i].K * GaussRat(n[i]);
  }
  int m = field_degree(w);
  int R = std::max({D.degree() + std::max(delta.degree(), 0), q + std::max(m - 1, S.degree()), 0});
  for (const auto& c : curves) R = std::max(R, D.degree() + c.K.degree());
  PolySpace rows(R), qs(q);
  std::size_t nl = curves.size(), nc = nl + qs.dim();
  QMatrix M(rows.dim(), QVector(nc, GaussRat(0)));
  for (std::size_t i = 0; i < nl; ++i) {
    QVector col = rows.to_vector(D * curves[i].K);
    for (std::size_t r = 0; r < rows.dim(); ++r) M[r][i] = col[r];
  }
  for (std::size_t j = 0; j < qs.dim(); ++j) {
    Poly qj = qs.basis_poly(j);
    QVector col = rows.to_vector(apply_dual(w, qj) - qj * S);
    for (std::size_t r = 0; r < rows.dim(); ++r) M[r][nl + j] = col[r];
  }
  return {std::move(M), rows.to_vector(D * delta), nc, rows, qs, nl};
}

inline std::string join_zero(const std::vector<int>& idx) {
  std::string s;
  for (int i : idx) s += "p_" + std::to_string(i) + " = ";
  return s + "0";
}

/// Case analysis of an inconsistent system: the x-power whose equations
/// carry the obstruction, the unknowns the remaining equations force, and
/// the residual left in the obstructing equations.
inline std::vector<std::string> explain_inconsistency(const SingerSystem& s, const std::vector<int>& n) {
  std::vector<std::string> out;
  int maxpow = s.rows.max_degree();
  auto subsystem = [&](int skip) {
    QMatrix M;
    QVector b;
    for (std::size_t r = 0; r < s.rows.dim(); ++r)
      if (s.rows.monomial(r)[0] != skip) {
        M.push_back(s.M[r]);
        b.push_back(s.rhs[r]);
      }
    return std::pair{M, b};
  };
  int obstruction = -1;
  for (int a = 0; a <= maxpow && obstruction < 0; ++a) {
    auto [M, b] = subsystem(a);
    if (solve(M, b, s.ncols)) obstruction = a;
  }
  if (obstruction < 0) {
    out.push_back("  no single power of x carries the obstruction");
    return out;
  }
  auto [M, b] = subsystem(obstruction);
  QVector xp = *solve(M, b, s.ncols);
  auto ker = nullspace(M, s.ncols);
  auto forced = [&](std::size_t i) {
    for (const auto& k : ker)
      if (!k[i].is_zero()) return false;
    return true;
  };
  for (std::size_t i = 0; i < s.nlambda; ++i) {
    std::string name = s.nlambda == 1 ? "lambda" : "lambda_" + std::to_string(i + 1);
    if (forced(i)) out.push_back("  forced: " + name + " = " + xp[i].pretty());
    else out.push_back("  " + name + " not forced");
  }
  int total = 0;
  for (int v : n) total += v;
  std::vector<int> zero_hand, zero_rest, loose;
  std::vector<std::string> fixed;
  for (int i = 0; i <= s.qspace.max_degree(); ++i) {
    bool all_forced = true, all_zero = true;
    Poly pi(vars_xy());
    for (std::size_t j = 0; j < s.qspace.dim(); ++j) {
      const auto& e = s.qspace.monomial(j);
      if (e[0] != i) continue;
      std::size_t col = s.nlambda + j;
      if (!forced(col)) all_forced = false;
      else if (!xp[col].is_zero()) {
        all_zero = false;
        pi.add_term({0, e[1], 0}, xp[col]);
      }
    }
    if (!all_forced) loose.push_back(i);
    else if (all_zero && i >= 1) (i <= total + 1 ? zero_hand : zero_rest).push_back(i);
    else if (!all_zero) fixed.push_back("p_" + std::to_string(i) + " = " + pi.pretty());
  }
  if (!zero_hand.empty()) out.push_back("  forced: " + join_zero(zero_hand));
  if (!zero_rest.empty()) out.push_back("  forced beyond x-degree " + std::to_string(total + 1) + ": " + join_zero(zero_rest));
  for (const auto& f : fixed) out.push_back("  forced: " + f);
  for (int i : loose) out.push_back("  p_" + std::to_string(i) + " not forced (free coefficients remain)");
  // residual of the obstructing equations at the particular solution
  Poly res(vars_xy());
  bool depends = false;
  for (std::size_t r = 0; r < s.rows.dim(); ++r) {
    if (s.rows.monomial(r)[0] != obstruction) continue;
    GaussRat v = -s.rhs[r];
    for (std::size_t c = 0; c < s.ncols; ++c)
      if (!s.M[r][c].is_zero() && !xp[c].is_zero()) v += s.M[r][c] * xp[c];
    for (const auto& k : ker) {
      GaussRat t(0);
      for (std::size_t c = 0; c < s.ncols; ++c)
        if (!s.M[r][c].is_zero()) t += s.M[r][c] * k[c];
      if (!t.is_zero()) depends = true;
    }
    res.add_term(s.rows.monomial(r), -v);
  }
  std::string power = obstruction == 0 ? "x^0" : obstruction == 1 ? "x" : "x^" + std::to_string(obstruction);
  Poly coeff = *res.divide_monomial({obstruction, 0, 0});
  out.push_back("  " + power + " equation: residual " + coeff.pretty() + " != 0" +
                (depends ? " (for the particular solution; free unknowns enter but cannot cancel it)" : ""));
  return out;
}

inline SingerWitness make_witness(const OneForm& w, const std::vector<DarbouxPair>& curves, const std::vector<int>& n,
                                  const QVector& u, const PolySpace& qs) {
  SingerWitness wit;
  wit.exponents = n;
  for (const auto& c : curves) wit.curves.push_back(c.f);
  for (std::size_t i = 0; i < curves.size(); ++i) wit.lambdas.push_back(u[i]);
  QVector qc(u.begin() + static_cast<long>(curves.size()), u.end());
  wit.Q = qs.from_vector(qc);
  Poly D = Poly::constant(vars_xy(), 1), F = Poly::constant(vars_xy(), 1);
  for (std::size_t i = 0; i < curves.size(); ++i) {
    D *= curves[i].f.pow(n[i]);
    F *= curves[i].f;
  }
  Poly G = D * D * F;
  OneForm N(vars_xy());
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (wit.lambdas[i].is_zero()) continue;
    Poly rest = D * D;
    for (std::size_t j = 0; j < curves.size(); ++j)
      if (j != i) rest *= curves[j].f;
    N = N + (rest * wit.lambdas[i]) * OneForm::differential(curves[i].f);
  }
  N = N + F * (D * OneForm::differential(wit.Q) - wit.Q * OneForm::differential(D));
  wit.numerator = N;
  wit.denominator = G;
  wit.closed = (G * exterior_derivative(N) - wedge(OneForm::differential(G), N)).is_zero();
  wit.satisfies_relation = (G * exterior_derivative(w) - wedge(N, w)).is_zero();
  return wit;
}

}  // namespace detail

/// Search for a closed rational eta with d omega = eta ^ omega whose affine
/// poles lie on the Darboux curves, over exponent tuples with sum <= nmax
/// (ascending) and deg Q <= qmax. The unknowns (lambda, Q) enter linearly and
/// each cell is solved exactly.
inline SingerCertificate singer_search(const OneForm& w, const DarbouxResult& darboux, int nmax, int qmax) {
  if (w.nvars() != 2) throw ArgumentError("Singer search needs a form in two variables");
  if (nmax < 0 || qmax < 0) throw ArgumentError("nmax and qmax must be non-negative");
  if (nmax > 12 || qmax > 16) throw ArgumentError("bounds beyond desk scale (nmax <= 12, qmax <= 16)");
  SingerCertificate cert;
  cert.nmax = nmax;
  cert.qmax = qmax;
  cert.dmax = darboux.dmax;
  auto curves = darboux.all_pairs();
  for (const auto& c : curves) cert.curves.push_back(c.f);
  cert.notes.push_back("poles of eta restricted to the invariant curves found up to degree " +
                       std::to_string(darboux.dmax) + "; completeness is relative to that bound");
  cert.notes.push_back("the line at infinity is outside the affine search");
  if (!darboux.exhaustive) cert.notes.push_back("the Darboux list is not exhaustive");
  Poly delta = w[1].derivative(0) - w[0].derivative(1);
  cert.transcript.push_back("d omega = (" + delta.pretty() + ") dx^dy");
  for (const auto& n : detail::exponent_tuples(curves.size(), nmax)) {
    std::string D;
    for (std::size_t i = 0; i < n.size(); ++i)
      if (n[i] > 0) D += (D.empty() ? "" : "*") + std::string("(") + curves[i].f.pretty() + ")" +
                         (n[i] > 1 ? "^" + std::to_string(n[i]) : "");
    if (D.empty()) D = "1";
    auto sys = detail::singer_system(w, curves, n, qmax);
    auto sol = solve(sys.M, sys.rhs, sys.ncols);
    if (!sol) {
      cert.transcript.push_back("case D = " + D + ", deg Q <= " + std::to_string(qmax) + ": inconsistent");
      for (auto& line : detail::explain_inconsistency(sys, n)) cert.transcript.push_back(std::move(line));
      continue;
    }
    for (int q = 0; q <= qmax; ++q) {
      auto s = detail::singer_system(w, curves, n, q);
      auto u = solve_min_norm(s.M, s.rhs, s.ncols);
      if (!u) continue;
      auto wit = detail::make_witness(w, curves, n, *u, s.qspace);
      cert.transcript.push_back("case D = " + D + ", deg Q <= " + std::to_string(q) + ": solution found");
      cert.found = true;
      cert.witness = std::move(wit);
      return cert;
    }
  }
  cert.transcript.push_back("no witness with sum n_i <= " + std::to_string(nmax) + " and deg Q <= " +
                            std::to_string(qmax));
  return cert;
}

}  // namespace hillfol
