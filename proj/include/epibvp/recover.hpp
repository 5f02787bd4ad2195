#pragma once

#include <string>
#include <vector>

#include "epibvp/boundary.hpp"
#include "epibvp/poly.hpp"

namespace epibvp {

/// Which pointwise residual a table holds.
///  Raw:    R(r) = r^2 w'' - r w' - w^2/2 - lambda r^4 / 2
///  Scaled: 2 R(r) / r, defined as 0 at r = 0.
enum class ResidualForm { Raw, Scaled };

struct ResidualTable {
  std::vector<double> grid;
  std::vector<double> values;
  std::string branch_label;
  BoundaryKind bc = BoundaryKind::NavierOne;
  double lambda = 0.0;
  ResidualForm form = ResidualForm::Raw;

  /// max |values|
  double max_abs() const;
};

/// Height profile phi with w = r phi' and phi(1) = 0.
struct Profile {
  RPoly phi;
  RPoly w;
  double a_star = 0.0;
  BoundaryKind bc = BoundaryKind::NavierOne;
  double lambda = 0.0;
};

/// 0.0, 0.1, ..., 0.9
std::vector<double> default_residual_grid();
/// n + 1 equally spaced points of [0, 1].
std::vector<double> uniform_grid(int intervals);

/// phi(r) = sum_k c_k (r^k - 1)/k for w = sum_k c_k r^k. The constant term is
/// accumulated in extended precision so that phi(1) vanishes to rounding of
/// the constant itself. Throws NonRecoverable if w has r^0 or r^1 terms.
RPoly recover_phi(const RPoly& w);

/// Residual of the ODE evaluated from the exact defect polynomial.
ResidualTable residual_table(const RPoly& w, double lambda, const std::vector<double>& grid,
                             ResidualForm form = ResidualForm::Raw);

/// Closed-form solution of the linearised problem r^2 w'' - r w' = lambda r^4 / 2.
///   Dirichlet: w = lambda/16 r^2 (r^2 - 1), phi = lambda/64 (r^2 - 1)^2
///   NavierOne: w = lambda/16 r^2 (r^2 - 2), phi = lambda/64 (r^4 - 4 r^2 + 3)
///   NavierTwo: w = lambda/16 r^2 (r^2 - 3), phi = lambda/64 (r^4 - 6 r^2 + 5)
Profile linear_approximation(BoundaryKind bc, double lambda);

/// Boundary condition satisfied by phi, for checks: Dirichlet phi'(1),
/// NavierOne phi'(1) + phi''(1), NavierTwo phi''(1).
double phi_boundary_condition(BoundaryKind bc, const RPoly& phi);

}  // namespace epibvp
