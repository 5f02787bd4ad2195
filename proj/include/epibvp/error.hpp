#pragma once

#include <stdexcept>
#include <string>

namespace epibvp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The integrand of the correction functional has an r^0 or r^1 term, so the
/// singular integral at t = 0 diverges.
class NonIntegrableDefect : public Error {
 public:
  using Error::Error;
};

/// w has r^0 or r^1 terms and cannot be written as r * phi'(r) with phi smooth.
class NonRecoverable : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class IterationBudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Two branches have indistinguishable sup-norms; they have merged at a fold.
class AmbiguousClassification : public Error {
 public:
  using Error::Error;
};

class NotTwoBranches : public Error {
 public:
  using Error::Error;
};

/// The endpoints of a critical-lambda bracket do not straddle the fold.
class InvalidBracket : public Error {
 public:
  using Error::Error;
};

/// |w| grew past the overflow bound during initial value integration.
class IvpOverflow : public Error {
 public:
  IvpOverflow(double r, double w, double w_prime)
      : Error("IVP solution exceeded overflow bound at r = " + std::to_string(r)),
        r_(r),
        w_(w),
        w_prime_(w_prime) {}

  double r() const noexcept { return r_; }
  double w() const noexcept { return w_; }
  double w_prime() const noexcept { return w_prime_; }

 private:
  double r_;
  double w_;
  double w_prime_;
};

}  // namespace epibvp
