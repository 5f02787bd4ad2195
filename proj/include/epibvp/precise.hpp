#pragma once

#include <vector>

#include "epibvp/poly.hpp"
#include "epibvp/vim.hpp"
#include "epibvp/wide_float.hpp"

namespace epibvp {

/// An iterate w_n(r) kept in binary128, together with its recovered profile
/// and defect. Branches with |a| beyond a few tens have double coefficients
/// whose sums at r near 1 cancel to far below their size, so every pointwise
/// quantity reported for a solved branch is evaluated from this form.
class PreciseIterate {
 public:
  PreciseIterate() = default;
  PreciseIterate(double a, double lambda, int n_iter, DefectModel model = DefectModel::Full);

  double a() const noexcept { return a_; }
  double lambda() const noexcept { return lambda_; }
  int n_iter() const noexcept { return n_; }

  double w(double r) const;
  double w_prime(double r) const;
  /// phi with phi(1) = 0 and r phi' = w.
  double phi(double r) const;
  /// R(r) = r^2 w'' - r w' - w^2/2 - lambda r^4 / 2.
  double residual(double r) const;

  /// Coefficients rounded to double.
  RPoly w_poly() const;
  RPoly phi_poly() const;

 private:
  double a_ = 0.0;
  double lambda_ = 0.0;
  int n_ = 0;
  std::vector<Quad> b_;       // w = sum b_j u^j, u = r^2
  std::vector<Quad> phi_;     // phi + phi_shift_ = sum phi_j u^j
  Quad phi_shift_ = 0;
  std::vector<Quad> defect_;  // R = sum defect_j u^j
};

/// Largest |phi| over n + 1 equally spaced points of [0, 1].
double phi_sup_norm(const PreciseIterate& it, int intervals = 100);

}  // namespace epibvp
