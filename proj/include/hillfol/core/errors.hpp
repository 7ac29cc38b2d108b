#pragma once

#include <stdexcept>
#include <string>

namespace hillfol {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

/// Malformed input: mismatched variable lists, bad bounds, unparsable text.
class ArgumentError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "argument"; }
};

/// Evaluation hit a pole, a branch cut, a singular locus or a singular point.
class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain"; }
};

/// An iterative procedure (series, integrator, Newton) did not converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "convergence"; }
};

}  // namespace hillfol
