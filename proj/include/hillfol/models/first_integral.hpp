#pragma once

#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hillfol/core/complex.hpp"
#include "hillfol/core/errors.hpp"

namespace hillfol {

inline constexpr double default_guard = 1e-3;
inline constexpr double denominator_tol = 1e-12;

struct Quotient {
  cplx num;
  cplx den;
};

/// Complex-valued function on C^2 or C^3 given as a quotient, with a
/// declared singular locus: the zero set of the denominator and a set of
/// branch-cut arguments that must stay off (-inf, 0].
class FirstIntegral {
 public:
  using Point = std::span<const cplx>;
  using QuotientFn = std::function<Quotient(Point)>;
  /// Complex numbers whose principal branch cut must be avoided at a point.
  using CutArgs = std::function<std::vector<cplx>(Point)>;

  FirstIntegral(std::string name, int arity, QuotientFn fn, CutArgs cuts = {})
      : name_(std::move(name)), arity_(arity), fn_(std::move(fn)), cuts_(std::move(cuts)) {
    if (arity_ != 2 && arity_ != 3) throw ArgumentError("first integrals have arity 2 or 3");
  }

  const std::string& name() const { return name_; }
  int arity() const { return arity_; }

  /// Reason the point lies on (or within `guard` of) the singular locus.
  std::optional<std::string> singular(Point p, double guard = 0.0) const {
    check_arity(p);
    if (cuts_)
      for (cplx c : cuts_(p))
        if (c == cplx(0.0) || distance_to_cut(c) < guard || (c.imag() == 0.0 && c.real() <= 0.0))
          return "branch cut of the principal branch";
    Quotient q = fn_(p);
    if (!is_finite(q.num) || !is_finite(q.den)) return "non-finite evaluation";
    if (std::abs(q.den) < denominator_tol) return "denominator vanishes";
    return std::nullopt;
  }

  cplx operator()(Point p) const {
    check_arity(p);
    if (cuts_)
      for (cplx c : cuts_(p))
        if (c == cplx(0.0) || (c.imag() == 0.0 && c.real() <= 0.0))
          throw DomainError(name_ + ": point on the branch cut");
    Quotient q = fn_(p);
    if (!is_finite(q.num) || !is_finite(q.den)) throw DomainError(name_ + ": non-finite evaluation");
    if (std::abs(q.den) < denominator_tol) throw DomainError(name_ + ": denominator vanishes");
    return q.num / q.den;
  }
  cplx operator()(std::initializer_list<cplx> p) const { return (*this)(Point(p.begin(), p.size())); }

  Quotient quotient(Point p) const { return fn_(p); }

 private:
  void check_arity(Point p) const {
    if (static_cast<int>(p.size()) != arity_)
      throw ArgumentError(name_ + " expects " + std::to_string(arity_) + " coordinates");
  }

  std::string name_;
  int arity_;
  QuotientFn fn_;
  CutArgs cuts_;
};

}  // namespace hillfol
