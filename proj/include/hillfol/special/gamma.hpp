#pragma once

#include <array>
#include <cmath>
#include <numbers>

#include "hillfol/core/complex.hpp"
#include "hillfol/core/errors.hpp"

namespace hillfol {

namespace detail {

inline bool is_nonpositive_integer(cplx s) {
  return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::round(s.real());
}

}  // namespace detail

/// Complex Gamma function: Stirling series for log Gamma after shifting to
/// Re s >= 15, reflection for Re s < 1/2. Integer arguments return the
/// exact factorial.
inline cplx gamma_fn(cplx s) {
  if (detail::is_nonpositive_integer(s))
    throw DomainError("Gamma has a pole at s = " + std::to_string(s.real()));
  if (s.imag() == 0.0 && s.real() == std::round(s.real()) && s.real() <= 171.0) {
    double f = 1.0;
    for (int k = 2; k < static_cast<int>(s.real()); ++k) f *= k;
    return f;
  }
  if (s.real() < 0.5) return pi / (std::sin(pi * s) * gamma_fn(1.0 - s));
  using L = std::complex<long double>;
  L z(s.real(), s.imag());
  L shift = 1;
  while (z.real() < 15.0L) {
    shift *= z;
    z += 1.0L;
  }
  static constexpr std::array<long double, 7> b{
      1.0L / 6, -1.0L / 30, 1.0L / 42, -1.0L / 30, 5.0L / 66, -691.0L / 2730, 7.0L / 6};
  L corr = 0, zp = z, z2 = z * z;
  for (std::size_t k = 1; k <= b.size(); ++k) {
    corr += b[k - 1] / (static_cast<long double>(2 * k * (2 * k - 1)) * zp);
    zp *= z2;
  }
  const long double two_pi = 2 * std::numbers::pi_v<long double>;
  L lg = (z - 0.5L) * std::log(z) - z + 0.5L * std::log(two_pi) + corr;
  L g = std::exp(lg) / shift;
  return {static_cast<double>(g.real()), static_cast<double>(g.imag())};
}

/// 1/Gamma(s), zero at the poles.
inline cplx rgamma(cplx s) {
  if (detail::is_nonpositive_integer(s)) return 0.0;
  return 1.0 / gamma_fn(s);
}

}  // namespace hillfol
