#pragma once

// Independent check of the iteration: the ODE as an initial value problem,
//   w'' = w'/r + w^2/(2 r^2) + lambda r^2 / 2,
// integrated by classic fixed-step RK4 from a series start at r0.

#include <utility>
#include <vector>

#include "epibvp/boundary.hpp"

namespace epibvp {

struct IvpConfig {
  double r0 = 1e-4;
  double h = 1e-4;
  int series_terms = 2;
  double overflow = 1e12;
};

struct IvpState {
  double w = 0.0;
  double w_prime = 0.0;
};

/// w = a r0^2 + c4 r0^4 and its derivative, c4 = (a^2 + lambda)/16. With
/// series_terms = 1 only the a r0^2 term is used. Throws DomainError for r0 <= 0.
IvpState series_start(double a, double lambda, double r0, int series_terms = 2);

/// Dense trajectory on r0, r0 + h, ..., 1 (the last step is shortened to land on 1).
struct IvpTrajectory {
  std::vector<double> r;
  std::vector<double> w;
  std::vector<double> w_prime;

  /// phi(r_i) = -integral_{r_i}^1 w/r by the composite trapezoid rule on the
  /// stored nodes; phi below r0 is taken equal to phi(r0).
  std::vector<double> phi() const;
  /// Linear interpolation of phi() at arbitrary r in [0, 1].
  double phi_at(const std::vector<double>& phi_nodes, double r) const;
};

/// Throws IvpOverflow if |w| exceeds cfg.overflow, DomainError on invalid config.
IvpTrajectory ivp_trajectory(double a, double lambda, const IvpConfig& cfg = {});
IvpState ivp_integrate(double a, double lambda, const IvpConfig& cfg = {});

/// Boundary functional of the IVP endpoint. Overflowing trajectories give
/// +/-infinity with the sign of w at blow-up.
double oracle_residual(double a, double lambda, BoundaryKind bc, const IvpConfig& cfg = {});

struct OracleOptions {
  double a_lo = -120.0;
  double a_hi = 20.0;
  int grid_points = 1400;
  double root_tol = 1e-10;
  IvpConfig ivp;
};

/// Roots in a of the oracle residual, sorted. Empty when none.
std::vector<double> oracle_branches(double lambda, BoundaryKind bc, const OracleOptions& opts = {});

}  // namespace epibvp
