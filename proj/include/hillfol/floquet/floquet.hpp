#pragma once

#include <array>
#include <optional>

#include "hillfol/models/first_integral.hpp"
#include "hillfol/models/periodic_coeff.hpp"
#include "hillfol/ode/flows.hpp"

namespace hillfol {

struct Monodromy {
  Eigen::Matrix2cd M;
  cplx z0;
  cplx T;

  cplx trace() const { return M.trace(); }
  cplx det() const { return M.determinant(); }
};

/// Fundamental matrix of u'' + p u = 0 over one period from the identity at z0.
inline Monodromy monodromy(const PeriodicCoeff& p, cplx z0 = 0.0, const ToleranceSpec& tol = ToleranceSpec::uniform(1e-12)) {
  if (p.period == cplx(0.0)) throw ArgumentError("p has no period");
  return {fundamental_matrix(p, ComplexPath::segment(z0, z0 + p.period), tol), z0, p.period};
}

struct FloquetData {
  cplx T;
  std::array<cplx, 2> multipliers;
  std::array<cplx, 2> exponents;
  std::array<std::optional<Eigen::Vector2cd>, 2> eigenvectors;
  bool degenerate = false;

  json to_json() const {
    json j{{"T", complex_to_json(T)},
           {"multipliers", {complex_to_json(multipliers[0]), complex_to_json(multipliers[1])}},
           {"mu", {complex_to_json(exponents[0]), complex_to_json(exponents[1])}},
           {"degenerate", degenerate}};
    json vs = json::array();
    for (const auto& v : eigenvectors)
      vs.push_back(v ? json{complex_to_json((*v)[0]), complex_to_json((*v)[1])} : json(nullptr));
    j["eigenvectors"] = vs;
    return j;
  }
};

namespace detail {

inline constexpr double coincide_tol = 1e-6;

/// Unit kernel vector of the 2x2 matrix N (assumed rank <= 1).
inline Eigen::Vector2cd kernel_vector(const Eigen::Matrix2cd& N) {
  Eigen::Vector2cd r0 = N.row(0).transpose(), r1 = N.row(1).transpose();
  const Eigen::Vector2cd& r = r0.norm() >= r1.norm() ? r0 : r1;
  Eigen::Vector2cd v(-r[1], r[0]);
  if (v.norm() == 0) return Eigen::Vector2cd(1.0, 0.0);
  v.normalize();
  // first nonzero entry real positive, for reproducible output
  cplx lead = std::abs(v[0]) > 1e-12 ? v[0] : v[1];
  return v * (std::abs(lead) / lead);
}

inline cplx exponent(cplx rho, cplx T) {
  cplx l = std::log(rho);
  if (std::abs(rho + 1.0) < coincide_tol) l = {std::log(std::abs(rho)), pi};
  return l / T;
}

}  // namespace detail

/// Multipliers, principal exponents and eigenvectors of a monodromy matrix.
/// Coinciding multipliers with a non-scalar M (a Jordan block) set the
/// degenerate flag; only the single eigenvector is then reported.
inline FloquetData floquet_decompose(const Monodromy& m) {
  FloquetData d;
  d.T = m.T;
  cplx tr = m.trace(), dt = m.det();
  cplx disc = std::sqrt(tr * tr - 4.0 * dt);
  d.multipliers = {(tr + disc) / 2.0, (tr - disc) / 2.0};
  d.exponents = {detail::exponent(d.multipliers[0], m.T), detail::exponent(d.multipliers[1], m.T)};
  bool coincide = std::abs(d.multipliers[0] - d.multipliers[1]) < detail::coincide_tol;
  if (coincide) {
    // the cluster mean tr/2 is well conditioned; the separate roots are off by O(sqrt(eps))
    cplx rho = tr / 2.0;
    d.multipliers = {rho, rho};
    d.exponents = {detail::exponent(rho, m.T), detail::exponent(rho, m.T)};
    if (std::abs(rho + 1.0) < detail::coincide_tol) d.exponents[1] = -d.exponents[0];
    Eigen::Matrix2cd N = m.M - rho * Eigen::Matrix2cd::Identity();
    if (N.norm() < detail::coincide_tol) {
      d.eigenvectors = {Eigen::Vector2cd(1.0, 0.0), Eigen::Vector2cd(0.0, 1.0)};
    } else {
      d.degenerate = true;
      d.eigenvectors[0] = detail::kernel_vector(N);
    }
    return d;
  }
  for (int i = 0; i < 2; ++i)
    d.eigenvectors[i] = detail::kernel_vector(m.M - d.multipliers[i] * Eigen::Matrix2cd::Identity());
  return d;
}

/// P(z) = e^{-mu z} phi(z) sampled at z_j = z0 + j T / N, j = 0..N, where phi
/// is the solution with (phi, phi')(z0) = v.
struct PeriodicPart {
  cplx mu;
  cplx z0;
  cplx T;
  std::vector<cplx> values;  // N + 1 samples, the last one at z0 + T

  int grid() const { return static_cast<int>(values.size()) - 1; }
  double periodicity_defect() const { return std::abs(values.back() - values.front()); }
};

inline PeriodicPart periodic_part(const PeriodicCoeff& p, cplx mu, const Eigen::Vector2cd& v, cplx z0 = 0.0,
                                  int N = 128, const ToleranceSpec& tol = ToleranceSpec::uniform(1e-12)) {
  if (N < 2) throw ArgumentError("grid size N must be at least 2 for the periodicity audit");
  if (p.period == cplx(0.0)) throw ArgumentError("p has no period");
  ComplexPath path = ComplexPath::uniform(z0, z0 + p.period, N);
  State u0(2);
  u0 << v[0], v[1];
  Trajectory t = integrate_linear(p, path, u0, tol);
  PeriodicPart out{mu, z0, p.period, {}};
  out.values.push_back(v[0]);
  std::size_t piece = 0;
  for (const auto& smp : t.samples) {
    if (piece < path.pieces() && smp.s == path.end_of(piece)) {
      cplx z = path.waypoints()[piece + 1];
      out.values.push_back(std::exp(-mu * (z - z0)) * smp.y[0]);
      ++piece;
    }
  }
  if (out.grid() != N) throw ConvergenceError("integration did not reach every grid point");
  // the samples above are normalized to e^{-mu (z - z0)}; rescale to e^{-mu z}
  cplx scale = std::exp(-mu * z0);
  for (auto& x : out.values) x *= scale;
  return out;
}

/// Periodic part of the eigen-solution `which` (0 or 1) of the Floquet data.
inline PeriodicPart periodic_part(const PeriodicCoeff& p, const FloquetData& d, int which, cplx z0 = 0.0,
                                  int N = 128, const ToleranceSpec& tol = ToleranceSpec::uniform(1e-12)) {
  if (which < 0 || which > 1) throw ArgumentError("eigen-solution index must be 0 or 1");
  if (!d.eigenvectors[which])
    throw DomainError("degenerate Floquet data: no eigen-solution for this multiplier");
  return periodic_part(p, d.exponents[which], *d.eigenvectors[which], z0, N, tol);
}

/// P(z) ~ sum_{|k| <= K} a_k e^{2 pi i k z / T}; for T = 2 pi i the basis is e^{kz}.
struct FourierSeries {
  cplx T;
  int K = 0;
  std::vector<cplx> a;  // a[k + K]
  double residual = 0;  // max reconstruction error on the sampling grid
  double tail_bound = 0;
  double noise_floor = 0;  // coefficients at or below it are set to zero

  cplx coeff(int k) const { return std::abs(k) > K ? cplx(0.0) : a[k + K]; }
  cplx rate(int k) const { return 2.0 * pi * I * static_cast<double>(k) / T; }

  cplx operator()(cplx z) const {
    cplx s = 0;
    for (int k = -K; k <= K; ++k) s += a[k + K] * std::exp(rate(k) * z);
    return s;
  }
  cplx derivative(cplx z) const {
    cplx s = 0;
    for (int k = -K; k <= K; ++k) s += rate(k) * a[k + K] * std::exp(rate(k) * z);
    return s;
  }
  /// The series of P(-z).
  FourierSeries reflected() const {
    FourierSeries r = *this;
    std::reverse(r.a.begin(), r.a.end());
    return r;
  }

  json to_json() const {
    json c = json::array();
    for (cplx x : a) c.push_back(complex_to_json(x));
    return {{"T", complex_to_json(T)}, {"K", K}, {"a_k", c}, {"residual", residual}, {"tail_bound", tail_bound},
            {"noise_floor", noise_floor}};
  }
};

/// Discrete Fourier transform over the N equispaced samples of one period.
/// The modes N/4 < |k| <= N/2 of an analytic P hold only sampling noise;
/// ten times their largest magnitude is the noise floor, and retained
/// coefficients below it are zeroed (e^{kz} amplifies them off the period line).
inline FourierSeries fourier_coefficients(const PeriodicPart& P, int K) {
  int N = P.grid();
  if (K < 0) throw ArgumentError("truncation K must be non-negative");
  if (N < 4 * K + 4) throw ArgumentError("need N >= 4K+4 samples, got " + std::to_string(N));
  FourierSeries f;
  f.T = P.T;
  f.K = K;
  auto dft = [&](int k) {
    cplx s = 0;
    for (int j = 0; j < N; ++j) s += P.values[j] * std::exp(-2.0 * pi * I * static_cast<double>(k * j) / static_cast<double>(N));
    return s / static_cast<double>(N) * std::exp(-f.rate(k) * P.z0);
  };
  std::vector<cplx> hat;
  for (int k = -N / 2; k < N - N / 2; ++k) hat.push_back(dft(k) * std::exp(f.rate(k) * P.z0));
  auto at = [&](int k) { return hat[k + N / 2]; };
  for (int k = -N / 2; k < N - N / 2; ++k)
    if (4 * std::abs(k) > N) f.noise_floor = std::max(f.noise_floor, 10 * std::abs(at(k)));
  for (int k = -K; k <= K; ++k) f.a.push_back(std::abs(at(k)) <= f.noise_floor ? cplx(0.0) : dft(k));
  double scale = 0;
  for (int j = 0; j < N; ++j) scale = std::max(scale, std::abs(P.values[j]));
  for (int k = -N / 2; k < N - N / 2; ++k)
    f.tail_bound += std::abs(k) > K ? std::abs(at(k)) : std::abs(at(k)) <= f.noise_floor ? std::abs(at(k)) : 0.0;
  f.tail_bound += 1e-12 * std::max(1.0, scale) * N;
  for (int j = 0; j < N; ++j) {
    cplx z = P.z0 + P.T * (static_cast<double>(j) / N);
    f.residual = std::max(f.residual, std::abs(f(z) - P.values[j]));
  }
  return f;
}

enum class LaurentMode {
  SecondSolution,  // phi_2 from the other multiplier's eigenvector
  Reflected        // phi_2(z) = e^{-mu z} P(-z); a solution only for even p
};

struct LaurentFourierOptions {
  LaurentMode mode = LaurentMode::SecondSolution;
  int N = 128;
  cplx z0 = 0.0;
  ToleranceSpec tol = ToleranceSpec::uniform(1e-12);
};

/// Truncated Laurent-Fourier first integral
///   H = e^{(mu1 - mu2) z} (x (mu1 P1 + P1') - y P1) / (x (mu2 P2 + P2') - y P2),
/// the quotient of the Wronskians of (x, y) against phi_i = e^{mu_i z} P_i.
/// In reflected mode P2(z) = P1(-z) and mu2 = -mu1.
inline FirstIntegral laurent_fourier_first_integral(const PeriodicCoeff& p, int K, const LaurentFourierOptions& o = {}) {
  FloquetData d = floquet_decompose(monodromy(p, o.z0, o.tol));
  if (d.degenerate) throw DomainError("degenerate Floquet data: the Laurent-Fourier integral needs two multipliers");
  FourierSeries P1 = fourier_coefficients(periodic_part(p, d, 0, o.z0, o.N, o.tol), K);
  cplx mu1 = d.exponents[0], mu2;
  FourierSeries P2;
  if (o.mode == LaurentMode::Reflected) {
    P2 = P1.reflected();
    mu2 = -mu1;
  } else {
    P2 = fourier_coefficients(periodic_part(p, d, 1, o.z0, o.N, o.tol), K);
    mu2 = d.exponents[1];
  }
  std::string name = std::string("H_p[K=") + std::to_string(K) + (o.mode == LaurentMode::Reflected ? ",reflected]" : "]");
  return FirstIntegral(name, 3, [P1, P2, mu1, mu2](FirstIntegral::Point q) {
    cplx x = q[0], y = q[1], z = q[2];
    cplx num = x * (mu1 * P1(z) + P1.derivative(z)) - y * P1(z);
    cplx den = x * (mu2 * P2(z) + P2.derivative(z)) - y * P2(z);
    return Quotient{std::exp((mu1 - mu2) * z) * num, den};
  });
}

}  // namespace hillfol
