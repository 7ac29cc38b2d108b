#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <string_view>

#include "hillfol/core/complex.hpp"
#include "hillfol/core/errors.hpp"

namespace hillfol {

/// Parses "p", "-p" or "p/q" into an exact rational.
inline mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ArgumentError("empty rational literal");
  mpq_class q;
  if (s.find('.') != std::string::npos) {
    // Decimal literal: exact value of the written digits.
    bool neg = s[0] == '-';
    std::string body = (s[0] == '-' || s[0] == '+') ? s.substr(1) : s;
    auto dot = body.find('.');
    std::string digits = body.substr(0, dot) + body.substr(dot + 1);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw ArgumentError("bad decimal literal '" + s + "'");
    mpz_class num(digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, body.size() - dot - 1);
    q = mpq_class(num, den);
    if (neg) q = -q;
  } else {
    if (q.set_str(s, 10) != 0) throw ArgumentError("bad rational literal '" + s + "'");
    if (q.get_den() == 0) throw ArgumentError("zero denominator in '" + s + "'");
  }
  q.canonicalize();
  return q;
}

/// Exact element of Q(i): re + im*i with arbitrary-precision rationals.
class GaussRat {
 public:
  GaussRat() = default;
  GaussRat(long v) : re_(v), im_(0) {}  // NOLINT(implicit)
  GaussRat(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }
  static GaussRat fraction(long num, long den) {
    if (den == 0) throw ArgumentError("zero denominator");
    return GaussRat(mpq_class(num, den));
  }
  static GaussRat i() { return GaussRat(0, 1); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  GaussRat conj() const { return {re_, -im_}; }
  mpq_class norm2() const { return re_ * re_ + im_ * im_; }

  GaussRat operator-() const { return {-re_, -im_}; }
  GaussRat& operator+=(const GaussRat& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussRat& operator-=(const GaussRat& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussRat& operator*=(const GaussRat& o) {
    if (o.is_real()) {
      re_ *= o.re_;
      im_ *= o.re_;
      return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  GaussRat& operator/=(const GaussRat& o) {
    if (o.is_zero()) throw DomainError("division by zero in Q(i)");
    if (o.is_real()) {
      re_ /= o.re_;
      im_ /= o.re_;
      return *this;
    }
    mpq_class n = o.norm2();
    mpq_class r = (re_ * o.re_ + im_ * o.im_) / n;
    mpq_class i = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  cplx to_complex() const { return {re_.get_d(), im_.get_d()}; }

  /// Canonical text: "p/q" when real, "(p/q + r/s i)" otherwise.
  std::string serialize() const {
    auto frac = [](const mpq_class& q) {
      return q.get_num().get_str() + "/" + q.get_den().get_str();
    };
    if (is_real()) return frac(re_);
    return "(" + frac(re_) + " + " + frac(im_) + " i)";
  }

  /// Compact human form: "3", "-1/2", "(1 + 2*i)", "i".
  std::string pretty() const {
    if (is_real()) return re_.get_str();
    if (sgn(re_) == 0) {
      if (im_ == 1) return "i";
      if (im_ == -1) return "-i";
      return im_.get_str() + "*i";
    }
    std::string im = sgn(im_) < 0 ? " - " + mpq_class(-im_).get_str() : " + " + im_.get_str();
    return "(" + re_.get_str() + im + "*i)";
  }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

/// Best rational approximation of x with denominator <= max_den, or nullopt
/// when the approximation misses x by more than tol.
inline std::optional<mpq_class> reconstruct_rational(double x, double tol, long max_den = 1000000) {
  if (!std::isfinite(x)) return std::nullopt;
  // Continued fraction convergents.
  long double v = x;
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int it = 0; it < 64; ++it) {
    long double a = std::floor(v);
    if (std::fabs(a) > 1e15L) break;
    long long ai = static_cast<long long>(a);
    long long p2 = ai * p1 + p0;
    long long q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (std::fabs(static_cast<long double>(p1) / q1 - x) <= tol) {
      mpq_class r(mpz_class(std::to_string(p1)), mpz_class(std::to_string(q1)));
      r.canonicalize();
      return r;
    }
    long double frac = v - a;
    if (frac < 1e-18L) break;
    v = 1.0L / frac;
  }
  return std::nullopt;
}

inline std::optional<GaussRat> reconstruct_gauss(cplx z, double tol, long max_den = 1000000) {
  auto re = reconstruct_rational(z.real(), tol, max_den);
  auto im = reconstruct_rational(z.imag(), tol, max_den);
  if (!re || !im) return std::nullopt;
  return GaussRat(*re, *im);
}

}  // namespace hillfol
