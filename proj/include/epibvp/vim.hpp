#pragma once

// Variational iteration for  r^2 w'' - r w' = w^2 / 2 + lambda r^4 / 2.
//
// One step is  w_{n+1}(r) = w_n(r) + integral_0^r (t - r)/t^2 F_n(t) dt  with
// F_n the equation defect of w_n. Starting from w_0 = a r^2 every iterate is a
// polynomial with no r^0 or r^1 term, so the kernel can be applied exactly.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "epibvp/poly.hpp"

namespace epibvp {

/// Which defect the correction functional integrates. Linear drops the w^2/2
/// term and exists to reproduce the Euler-type linearisation.
enum class DefectModel { Full, Linear };

struct VimProblem {
  double lambda = 0.0;
  double a = 0.0;  ///< w_0 = a r^2
  int n_iter = 7;
};

/// F(t) = t^2 w'' - t w' - w^2/2 - lambda t^4 / 2 (the w^2 term is omitted for
/// DefectModel::Linear).
RPoly ode_defect(const RPoly& w, double lambda, DefectModel model = DefectModel::Full);

/// w + apply_vim_kernel(ode_defect(w)).
RPoly vim_step(const RPoly& w, double lambda, DefectModel model = DefectModel::Full);

/// n_iter steps from a r^2.
RPoly iterate(const VimProblem& problem);

/// n steps from an arbitrary starting polynomial.
RPoly iterate_from(RPoly w0, double lambda, int n, DefectModel model = DefectModel::Full);

/// All iterates w_0 .. w_n.
std::vector<RPoly> iterate_history(const VimProblem& problem);

/// Monomial a^a_power lambda^lambda_power r^r_power.
struct APolyTerm {
  int a_power = 0;
  int lambda_power = 0;
  int r_power = 0;
  double coeff = 0.0;
};

/// An iterate with a and lambda kept symbolic. Every monomial produced by the
/// iteration has r_power = 2 a_power + 4 lambda_power, so the coefficients are
/// stored densely by (a_power, lambda_power).
class APoly {
 public:
  APoly() = default;
  APoly(int max_a_power, int max_lambda_power);

  double coeff(int a_power, int lambda_power) const;
  void set(int a_power, int lambda_power, double value);

  int max_a_power() const noexcept { return max_a_; }
  int max_lambda_power() const noexcept { return max_l_; }

  /// Nonzero terms ordered by (a_power, lambda_power).
  std::vector<APolyTerm> terms() const;

  /// Collapse to a polynomial in r at numeric (a, lambda).
  RPoly specialize(double a, double lambda) const;

 private:
  std::size_t index(int a_power, int lambda_power) const;
  int max_a_ = 0;
  int max_l_ = 0;
  std::vector<double> c_;
};

inline constexpr int kDefaultSymbolicBudget = 8;

/// Symbolic n-th iterate in (a, lambda). Throws IterationBudgetExceeded when
/// n > max_iterations, DomainError when n < 1.
APoly symbolic_iterate(int n, int max_iterations = kDefaultSymbolicBudget);

/// Residuals of the three stationarity conditions on mu(t) = (t - r)/t^2:
///   at_boundary  = 1 - mu'(r) r^2 - 2 r mu(r)   (t = r)
///   vanishing    = mu(r)                        (t = r)
///   interior     = t^2 mu''(t) + 4 t mu'(t) + 2 mu(t)
struct MultiplierResidual {
  double at_boundary = 0.0;
  double vanishing = 0.0;
  double interior = 0.0;
};

struct MultiplierSample {
  double t = 0.0;
  double r = 0.0;
};

double multiplier(double t, double r);
double multiplier_dt(double t, double r);
double multiplier_dt2(double t, double r);

/// Throws DomainError for t <= 0.
std::vector<MultiplierResidual> multiplier_residuals(std::span<const MultiplierSample> samples);

}  // namespace epibvp
