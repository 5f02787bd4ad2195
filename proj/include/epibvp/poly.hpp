#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace epibvp {

/// Dense polynomial in the radial variable with real coefficients;
/// coeff(k) multiplies r^k. Trailing coefficients that are exactly zero are
/// trimmed; nothing else is ever pruned.
class RPoly {
 public:
  RPoly() = default;
  explicit RPoly(std::vector<double> coeffs);
  RPoly(std::initializer_list<double> coeffs);

  static RPoly monomial(double c, std::size_t power);

  std::span<const double> coeffs() const noexcept { return coeffs_; }
  /// Coefficient of r^k, zero past the stored range.
  double coeff(std::size_t k) const noexcept { return k < coeffs_.size() ? coeffs_[k] : 0.0; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  /// True when the r^0 and r^1 coefficients are exactly zero.
  bool vanishes_to_second_order() const noexcept { return coeff(0) == 0.0 && coeff(1) == 0.0; }

  friend bool operator==(const RPoly&, const RPoly&) = default;

 private:
  void trim() noexcept;
  std::vector<double> coeffs_;
};

RPoly add(const RPoly& p, const RPoly& q);
RPoly subtract(const RPoly& p, const RPoly& q);
RPoly scale(const RPoly& p, double factor);
/// Direct O(deg p * deg q) convolution.
RPoly mul(const RPoly& p, const RPoly& q);
RPoly differentiate(const RPoly& p);
/// Horner evaluation.
double evaluate(const RPoly& p, double r);
/// Compensated Horner evaluation; as accurate as Horner in twice the working
/// precision. Used where the coefficients cancel heavily (r close to 1).
double evaluate_accurate(const RPoly& p, double r);
/// Sum of |coeff(k)| r^k; the scale that Horner's rounding error is relative to.
double absolute_evaluate(const RPoly& p, double r);

/// Closed form of  integral_0^r (t - r) / t^2 * f(t) dt.
/// Each monomial t^k (k >= 2) maps to -r^k / (k (k - 1)).
/// Throws NonIntegrableDefect if f has an r^0 or r^1 term.
RPoly apply_vim_kernel(const RPoly& f);

inline RPoly operator+(const RPoly& p, const RPoly& q) { return add(p, q); }
inline RPoly operator-(const RPoly& p, const RPoly& q) { return subtract(p, q); }
inline RPoly operator*(const RPoly& p, const RPoly& q) { return mul(p, q); }
inline RPoly operator*(double s, const RPoly& p) { return scale(p, s); }

/// Largest |p(r)| over n + 1 equally spaced points of [0, 1].
double sup_norm_on_grid(const RPoly& p, int intervals = 100);

}  // namespace epibvp
