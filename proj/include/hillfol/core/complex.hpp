#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace hillfol {

using cplx = std::complex<double>;
using lcplx = std::complex<long double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

/// Distance from z to the closed ray (-inf, 0], the principal branch cut.
inline double distance_to_cut(cplx z) {
  return z.real() > 0.0 ? std::abs(z) : std::abs(z.imag());
}

inline bool near_branch_cut(cplx z, double guard) { return distance_to_cut(z) < guard; }

inline bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace hillfol
