#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "hillfol/special/gamma.hpp"

namespace hillfol {

struct SeriesControl {
  int max_terms = 300;
  double abs_tol = 1e-30;
  double rel_tol = 1e-18;

  void validate() const {
    if (max_terms < 1) throw ArgumentError("max_terms must be at least 1");
    if (!(abs_tol > 0) || !(rel_tol > 0)) throw ArgumentError("series tolerances must be positive");
  }
};

enum class BesselKind { J, Y };

struct SeriesResult {
  cplx value;
  int terms = 0;
  double last_term = 0;  // magnitude of the last summed term, relative to the prefactor
};

namespace detail {

inline constexpr long double euler_gamma = 0.577215664901532860606512090082402431L;

inline std::optional<int> as_integer(cplx nu) {
  if (nu.imag() != 0.0) return std::nullopt;
  double r = std::round(nu.real());
  if (std::abs(nu.real() - r) > 1e-14) return std::nullopt;
  return static_cast<int>(r);
}

inline long double factorial(int n) {
  long double f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

/// sum_k (-z^2/4)^k / (k! Gamma(nu+k+1)), the entire part of J_nu.
inline SeriesResult j_series(cplx nu, cplx z, const SeriesControl& ctl) {
  lcplx lnu(nu.real(), nu.imag());
  lcplx lz(z.real(), z.imag());
  lcplx q = -lz * lz / 4.0L;
  lcplx t;
  if (auto n = as_integer(nu); n && *n >= 0) t = 1.0L / factorial(*n);
  else {
    cplx r = rgamma(nu + 1.0);
    t = lcplx(r.real(), r.imag());
  }
  lcplx sum = t;
  long double peak = std::abs(q);
  for (int k = 1; k < ctl.max_terms; ++k) {
    t *= q / (static_cast<long double>(k) * (lnu + static_cast<long double>(k)));
    sum += t;
    long double at = std::abs(t);
    bool past_peak = k * std::abs(lnu + static_cast<long double>(k)) > peak;
    if (past_peak && at <= ctl.abs_tol + ctl.rel_tol * std::abs(sum))
      return {cplx(static_cast<double>(sum.real()), static_cast<double>(sum.imag())), k + 1,
              static_cast<double>(at)};
  }
  throw ConvergenceError("Bessel series did not converge within " + std::to_string(ctl.max_terms) +
                         " terms at |z| = " + std::to_string(std::abs(z)));
}

inline lcplx to_l(cplx z) { return {z.real(), z.imag()}; }
inline cplx from_l(lcplx z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

inline lcplx j_value(cplx nu, cplx z, const SeriesControl& ctl) {
  SeriesResult s = j_series(nu, z, ctl);
  if (auto n = as_integer(nu)) {
    lcplx h = to_l(z) / 2.0L;
    lcplx p = 1;
    for (int k = 0; k < *n; ++k) p *= h;
    return p * to_l(s.value);
  }
  if (z == cplx(0.0)) {
    if (nu.real() > 0) return 0;
    throw DomainError("J_nu(0) is infinite for Re nu < 0");
  }
  return std::pow(to_l(z) / 2.0L, to_l(nu)) * to_l(s.value);
}

/// Integer-order Y_n, n >= 0, by the logarithmic series.
inline lcplx y_integer(int n, cplx z, const SeriesControl& ctl) {
  lcplx lz = to_l(z);
  lcplx h = lz / 2.0L;
  lcplx q = h * h;
  const long double lpi = std::numbers::pi_v<long double>;
  lcplx finite = 0;
  if (n > 0) {
    lcplx qk = 1;
    for (int k = 0; k < n; ++k) {
      finite += factorial(n - k - 1) / factorial(k) * qk;
      qk *= q;
    }
    lcplx hn = 1;
    for (int k = 0; k < n; ++k) hn *= h;
    finite = -finite / (hn * lpi);
  }
  lcplx jn = j_value(n, z, ctl);
  lcplx logpart = 2.0L / lpi * std::log(h) * jn;
  // psi(k+1) + psi(n+k+1) with psi(m+1) = -gamma + H_m.
  long double hk = 0, hnk = 0;
  for (int m = 1; m <= n; ++m) hnk += 1.0L / m;
  lcplx t = 1.0L / factorial(n);
  lcplx sum = (hk + hnk - 2 * euler_gamma) * t;
  long double peak = std::abs(q);
  bool done = false;
  for (int k = 1; k < ctl.max_terms; ++k) {
    t *= -q / (static_cast<long double>(k) * (n + k));
    hk += 1.0L / k;
    hnk += 1.0L / (n + k);
    lcplx term = (hk + hnk - 2 * euler_gamma) * t;
    sum += term;
    if (static_cast<long double>(k) * (n + k) > peak &&
        std::abs(term) <= ctl.abs_tol + ctl.rel_tol * std::abs(sum)) {
      done = true;
      break;
    }
  }
  if (!done) throw ConvergenceError("Y_n logarithmic series did not converge");
  lcplx hn = 1;
  for (int k = 0; k < n; ++k) hn *= h;
  return finite + logpart - hn / lpi * sum;
}

}  // namespace detail

/// Bessel function of the first kind, principal branch of z^nu.
inline cplx bessel_j(cplx nu, cplx z, const SeriesControl& ctl = {}) {
  ctl.validate();
  if (auto n = detail::as_integer(nu); n && *n < 0) {
    cplx v = detail::from_l(detail::j_value(-*n, z, ctl));
    return (*n % 2) ? -v : v;
  }
  return detail::from_l(detail::j_value(nu, z, ctl));
}

/// Bessel function of the second kind. Non-integer orders use the
/// J_nu / J_-nu combination, integer orders the logarithmic series.
inline cplx bessel_y(cplx nu, cplx z, const SeriesControl& ctl = {}) {
  ctl.validate();
  if (z == cplx(0.0)) throw DomainError("Y_nu has a logarithmic singularity at z = 0");
  if (auto n = detail::as_integer(nu)) {
    cplx v = detail::from_l(detail::y_integer(std::abs(*n), z, ctl));
    return (*n < 0 && (*n % 2)) ? -v : v;
  }
  lcplx lnu = detail::to_l(nu);
  const long double lpi = std::numbers::pi_v<long double>;
  lcplx jp = detail::j_value(nu, z, ctl);
  lcplx jm = detail::j_value(-nu, z, ctl);
  return detail::from_l((jp * std::cos(lnu * lpi) - jm) / std::sin(lnu * lpi));
}

inline cplx bessel(BesselKind kind, cplx nu, cplx z, const SeriesControl& ctl = {}) {
  return kind == BesselKind::J ? bessel_j(nu, z, ctl) : bessel_y(nu, z, ctl);
}

/// d/dz of J_nu or Y_nu via 2 f'_nu = f_{nu-1} - f_{nu+1}.
inline cplx bessel_deriv(BesselKind kind, cplx nu, cplx z, const SeriesControl& ctl = {}) {
  return (bessel(kind, nu - 1.0, z, ctl) - bessel(kind, nu + 1.0, z, ctl)) / 2.0;
}

/// Number of series terms used for J_nu(z) and the ratio bounds
/// |z^2/4| / (k |nu + k|) for k = 1..count.
inline SeriesResult bessel_j_series(cplx nu, cplx z, const SeriesControl& ctl = {}) {
  return detail::j_series(nu, z, ctl);
}

inline std::vector<double> bessel_ratio_bounds(cplx nu, cplx z, int count) {
  std::vector<double> r;
  for (int k = 1; k <= count; ++k) r.push_back(std::norm(z) / 4.0 / (k * std::abs(nu + double(k))));
  return r;
}

inline const char* kind_name(BesselKind k) { return k == BesselKind::J ? "J" : "Y"; }

}  // namespace hillfol
