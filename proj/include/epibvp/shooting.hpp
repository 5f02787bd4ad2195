#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "epibvp/boundary.hpp"
#include "epibvp/poly.hpp"
#include "epibvp/precise.hpp"
#include "epibvp/recover.hpp"

namespace epibvp {

enum class BranchLabel { Unlabeled, Lower, Upper, Positive, Negative };

std::string_view to_string(BranchLabel label);
std::optional<BranchLabel> parse_branch_label(std::string_view name);

struct BranchRoot {
  double a_star = 0.0;
  BoundaryKind bc = BoundaryKind::NavierOne;
  double lambda = 0.0;
  BranchLabel label = BranchLabel::Unlabeled;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  /// Boundary residual at a_star.
  double residual = 0.0;
  /// Another root lies within kFoldSeparation in a.
  bool fold = false;
};

inline constexpr double kFoldSeparation = 1e-6;

struct ShootingOptions {
  double a_lo = -120.0;
  double a_hi = 20.0;
  int grid_points = 4000;
  /// Iteration depth; default_iterations(bc) when unset.
  std::optional<int> n_iter;
  double root_tol = 1e-11;
  /// Worker threads for the grid scan; 0 means hardware concurrency.
  int jobs = 1;
};

int resolve_iterations(const ShootingOptions& opts, BoundaryKind bc);

/// Boundary functional of the n_iter-th iterate from a r^2, evaluated in
/// binary128, or in 200-bit arithmetic when the binary128 rounding bound
/// exceeds the value.
double boundary_residual(double a, double lambda, BoundaryKind bc, int n_iter);

/// Sign of the boundary functional, using the cheapest precision whose
/// rounding error bound is smaller than the value: double, then double-double,
/// then binary128 and 200 bits. Returns the value from the tier that decided it.
double boundary_residual_tiered(double a, double lambda, BoundaryKind bc, int n_iter);

/// Scans the a-window, brackets every sign change and bisects each bracket with
/// boundary_residual. Roots are sorted by a and labelled; branches too close to
/// tell apart stay unlabelled with the fold flag set. An empty result means no
/// solution in the window.
std::vector<BranchRoot> find_branches(double lambda, BoundaryKind bc,
                                      const ShootingOptions& opts = {});

/// Positive/Negative by the sign of phi(1/2); only meaningful for lambda < 0.
BranchRoot classify_branch(BranchRoot root, const PreciseIterate& profile);

/// Assigns labels to the roots of one (bc, lambda). For lambda >= 0 the branch
/// with the smaller sup-norm of phi is Lower, the other Upper; a sup-norm tie
/// within 1e-9 throws AmbiguousClassification. For lambda < 0 each branch is
/// labelled by the sign of phi(1/2).
void classify_branches(std::vector<BranchRoot>& roots, const std::vector<PreciseIterate>& profiles);

struct SolutionBranch {
  BranchRoot root;
  PreciseIterate iterate;
  Profile profile;
  ResidualTable residuals;
  double phi_sup_norm = 0.0;
  /// phi keeps one sign on [0, 1) (101-point grid); a soft check for the
  /// Positive/Negative labels.
  bool sign_definite = true;
};

/// Residual table of a solved branch on the given grid, evaluated in binary128.
ResidualTable branch_residual_table(const SolutionBranch& branch, const std::vector<double>& grid,
                                    ResidualForm form = ResidualForm::Raw);

/// find_branches followed by profile recovery, residual tables on the default
/// grid and labelling.
std::vector<SolutionBranch> solve(double lambda, BoundaryKind bc, const ShootingOptions& opts = {});

/// For lambda >= 0 the lower profile lies below the upper one at every point of
/// a 101-point grid (within tol).
bool branches_ordered(const SolutionBranch& lower, const SolutionBranch& upper, double tol = 1e-12);

}  // namespace epibvp
