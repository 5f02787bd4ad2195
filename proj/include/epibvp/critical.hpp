#pragma once

#include <vector>

#include "epibvp/boundary.hpp"
#include "epibvp/shooting.hpp"

namespace epibvp {

struct BranchSummary {
  double a_star = 0.0;
  double sup_norm_phi = 0.0;
  BranchLabel label = BranchLabel::Unlabeled;
};

struct SweepRecord {
  double lambda = 0.0;
  BoundaryKind bc = BoundaryKind::NavierOne;
  int branch_count = 0;
  std::vector<BranchSummary> branches;
  bool fold_flag = false;
  /// Profiles of the branches, in the same order; used by branch_gap.
  std::vector<PreciseIterate> profiles;
};

/// One record per lambda, in input order. Entries run concurrently on
/// opts.jobs workers (each scan then runs single-threaded).
std::vector<SweepRecord> sweep(const std::vector<double>& lambdas, BoundaryKind bc,
                               const ShootingOptions& opts = {});

SweepRecord sweep_one(double lambda, BoundaryKind bc, const ShootingOptions& opts = {});

struct CriticalEstimate {
  BoundaryKind bc = BoundaryKind::NavierOne;
  double lambda_crit = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int n_iter_used = 0;
};

/// Bisection on "at least two branches" between lo (two or more) and hi
/// (none) until hi - lo <= tol. Throws InvalidBracket if the endpoints do not
/// straddle the fold, DomainError for tol <= 0.
CriticalEstimate find_critical_lambda(BoundaryKind bc, double lo, double hi, double tol,
                                      const ShootingOptions& opts = {});

/// Critical lambda at depth n - 1 and n + 1 (when n > 1), for disclosure.
struct CriticalSensitivity {
  CriticalEstimate base;
  std::vector<CriticalEstimate> neighbours;
};

CriticalSensitivity critical_with_sensitivity(BoundaryKind bc, double lo, double hi, double tol,
                                              const ShootingOptions& opts = {});

/// Largest |phi_1 - phi_2| over 101 equally spaced points of [0, 1].
/// Throws NotTwoBranches unless the record has exactly two branches.
double branch_gap(const SweepRecord& record);

}  // namespace epibvp
