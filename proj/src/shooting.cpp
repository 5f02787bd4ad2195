#include "epibvp/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "epibvp/error.hpp"
#include "epibvp/even_iterate.hpp"

namespace epibvp {

std::string_view to_string(BranchLabel label) {
  switch (label) {
    case BranchLabel::Unlabeled:
      return "unlabeled";
    case BranchLabel::Lower:
      return "lower";
    case BranchLabel::Upper:
      return "upper";
    case BranchLabel::Positive:
      return "positive";
    case BranchLabel::Negative:
      return "negative";
  }
  return "unlabeled";
}

std::optional<BranchLabel> parse_branch_label(std::string_view name) {
  if (name == "lower") return BranchLabel::Lower;
  if (name == "upper") return BranchLabel::Upper;
  if (name == "positive") return BranchLabel::Positive;
  if (name == "negative") return BranchLabel::Negative;
  return std::nullopt;
}

int resolve_iterations(const ShootingOptions& opts, BoundaryKind bc) {
  const int n = opts.n_iter.value_or(default_iterations(bc));
  if (n < 1) throw DomainError("n_iter must be at least 1");
  return n;
}

namespace {

// Precision tiers, cheapest first.
even::BoundaryValue tier_value(int tier, double a, double lambda, BoundaryKind bc, int n) {
  switch (tier) {
    case 0:
      return even::boundary_value(even::iterate<double>(a, lambda, n), bc);
    case 1:
      return even::boundary_value(even::iterate<DoubleDouble>(a, lambda, n), bc);
    case 2:
      return even::boundary_value(even::iterate<Quad>(a, lambda, n), bc);
    default:
      return even::boundary_value(even::iterate<Wide>(a, lambda, n), bc);
  }
}

constexpr int kTopTier = 3;
constexpr double kTierRoundoff[] = {unit_roundoff<double>(), unit_roundoff<DoubleDouble>(),
                                    unit_roundoff<Quad>(), unit_roundoff<Wide>()};

// Escalates from `first` until the value clears its rounding bound.
double resolve_from(int first, double a, double lambda, BoundaryKind bc, int n) {
  for (int t = first;; ++t) {
    const auto v = tier_value(t, a, lambda, bc, n);
    if (t == kTopTier || std::abs(v.value) > v.error_bound) return v.value;
  }
}

}  // namespace

double boundary_residual(double a, double lambda, BoundaryKind bc, int n_iter) {
  return resolve_from(2, a, lambda, bc, n_iter);
}

double boundary_residual_tiered(double a, double lambda, BoundaryKind bc, int n_iter) {
  return resolve_from(0, a, lambda, bc, n_iter);
}

namespace {

int sign(double x) { return (x > 0.0) - (x < 0.0); }

// Tiered evaluation along the grid. When double precision cannot decide a
// point, the neighbouring |B| predicts how much precision is needed, so the
// intermediate tiers are skipped when they would fail anyway.
std::vector<double> scan(double lambda, BoundaryKind bc, int n, const std::vector<double>& grid,
                         int jobs) {
  std::vector<double> values(grid.size());
  if (jobs <= 0) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  jobs = std::min<int>(jobs, static_cast<int>(grid.size()));
  auto work = [&](int t) {
    double prev = 0.0;
    for (std::size_t i = t; i < grid.size(); i += jobs) {
      const auto d = tier_value(0, grid[i], lambda, bc, n);
      if (std::abs(d.value) > d.error_bound) {
        values[i] = prev = d.value;
        continue;
      }
      int first = 1;
      if (prev != 0.0) {
        // error_bound scales with the unit roundoff at fixed magnitude.
        const double needed = kTierRoundoff[0] * std::abs(prev) / (4.0 * d.error_bound);
        while (first < kTopTier && kTierRoundoff[first] > needed) ++first;
      }
      values[i] = prev = resolve_from(first, grid[i], lambda, bc, n);
    }
  };
  if (jobs <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(work, t);
  }
  return values;
}

// Bisection on [lo, hi] with B(lo), B(hi) of opposite sign, at full precision.
// Stops on an exact zero or when the bracket is a few ulps wide.
BranchRoot bisect(double lo, double hi, double f_lo, double f_hi, double lambda, BoundaryKind bc,
                  int n) {
  BranchRoot root;
  root.bc = bc;
  root.lambda = lambda;
  root.bracket_lo = lo;
  root.bracket_hi = hi;
  if (lo < 0.0 && hi > 0.0) {
    // The trivial solution is an exact root whenever lambda = 0.
    const double f0 = boundary_residual(0.0, lambda, bc, n);
    if (f0 == 0.0) {
      root.a_star = 0.0;
      root.residual = 0.0;
      return root;
    }
    if (sign(f0) == sign(f_lo)) {
      lo = 0.0;
      f_lo = f0;
    } else {
      hi = 0.0;
      f_hi = f0;
    }
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (hi - lo <= 1e-15 * std::max(1.0, std::abs(mid)) || mid <= lo || mid >= hi) break;
    const double f_mid = boundary_residual(mid, lambda, bc, n);
    if (f_mid == 0.0) {
      lo = hi = mid;
      f_lo = f_hi = 0.0;
      break;
    }
    if (sign(f_mid) == sign(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  if (std::abs(f_lo) <= std::abs(f_hi)) {
    root.a_star = lo;
    root.residual = f_lo;
  } else {
    root.a_star = hi;
    root.residual = f_hi;
  }
  return root;
}

}  // namespace

std::vector<BranchRoot> find_branches(double lambda, BoundaryKind bc, const ShootingOptions& opts) {
  if (!(opts.a_lo < opts.a_hi)) throw DomainError("a-window must satisfy lo < hi");
  if (opts.grid_points < 100) throw DomainError("grid_points must be at least 100");
  const int n = resolve_iterations(opts, bc);

  std::vector<double> grid(opts.grid_points);
  for (int i = 0; i < opts.grid_points; ++i) {
    grid[i] = opts.a_lo + (opts.a_hi - opts.a_lo) * i / (opts.grid_points - 1);
  }
  const std::vector<double> values = scan(lambda, bc, n, grid, opts.jobs);

  std::vector<BranchRoot> roots;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (values[i] == 0.0) {
      BranchRoot r;
      r.a_star = grid[i];
      r.bc = bc;
      r.lambda = lambda;
      r.bracket_lo = r.bracket_hi = grid[i];
      r.residual = boundary_residual(grid[i], lambda, bc, n);
      roots.push_back(r);
      continue;
    }
    if (i == 0 || values[i - 1] == 0.0 || sign(values[i - 1]) == sign(values[i])) continue;
    // Re-check the bracket at full precision; the scan tiers stop early.
    const double f_lo = boundary_residual(grid[i - 1], lambda, bc, n);
    const double f_hi = boundary_residual(grid[i], lambda, bc, n);
    if (sign(f_lo) * sign(f_hi) >= 0) continue;
    roots.push_back(bisect(grid[i - 1], grid[i], f_lo, f_hi, lambda, bc, n));
  }
  std::sort(roots.begin(), roots.end(),
            [](const BranchRoot& x, const BranchRoot& y) { return x.a_star < y.a_star; });
  for (std::size_t i = 1; i < roots.size(); ++i) {
    if (roots[i].a_star - roots[i - 1].a_star < kFoldSeparation) {
      roots[i].fold = roots[i - 1].fold = true;
    }
  }
  std::vector<PreciseIterate> iterates;
  for (const auto& r : roots) iterates.emplace_back(r.a_star, lambda, n);
  try {
    classify_branches(roots, iterates);
  } catch (const AmbiguousClassification&) {
    // Merged branches: report them as a fold and leave them unlabelled.
    for (auto& r : roots) r.fold = true;
  }
  return roots;
}

BranchRoot classify_branch(BranchRoot root, const PreciseIterate& profile) {
  const double mid = profile.phi(0.5);
  root.label = mid > 0.0 ? BranchLabel::Positive : mid < 0.0 ? BranchLabel::Negative : BranchLabel::Unlabeled;
  return root;
}

void classify_branches(std::vector<BranchRoot>& roots, const std::vector<PreciseIterate>& profiles) {
  if (roots.size() != profiles.size()) throw DomainError("one profile per root is required");
  if (roots.empty()) return;
  if (roots.front().lambda < 0.0) {
    for (std::size_t i = 0; i < roots.size(); ++i) roots[i] = classify_branch(roots[i], profiles[i]);
    return;
  }
  std::vector<double> norms;
  for (const auto& p : profiles) norms.push_back(phi_sup_norm(p));
  std::vector<std::size_t> order(roots.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return norms[x] < norms[y]; });
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (norms[order[k]] - norms[order[k - 1]] < 1e-9) {
      throw AmbiguousClassification("branches at a = " + std::to_string(roots[order[k - 1]].a_star) +
                                    " and a = " + std::to_string(roots[order[k]].a_star) +
                                    " have equal sup-norms; they have merged at a fold");
    }
  }
  for (auto& r : roots) r.label = BranchLabel::Unlabeled;
  roots[order.front()].label = BranchLabel::Lower;
  if (order.size() > 1) roots[order.back()].label = BranchLabel::Upper;
}

ResidualTable branch_residual_table(const SolutionBranch& branch, const std::vector<double>& grid,
                                    ResidualForm form) {
  ResidualTable table;
  table.grid = grid;
  table.bc = branch.root.bc;
  table.lambda = branch.root.lambda;
  table.branch_label = std::string(to_string(branch.root.label));
  table.form = form;
  for (double r : grid) {
    const double raw = branch.iterate.residual(r);
    table.values.push_back(form == ResidualForm::Raw ? raw : (r == 0.0 ? 0.0 : 2.0 * raw / r));
  }
  return table;
}

std::vector<SolutionBranch> solve(double lambda, BoundaryKind bc, const ShootingOptions& opts) {
  std::vector<BranchRoot> roots = find_branches(lambda, bc, opts);
  const int n = resolve_iterations(opts, bc);
  std::vector<PreciseIterate> iterates;
  for (const auto& r : roots) iterates.emplace_back(r.a_star, lambda, n);

  std::vector<SolutionBranch> out;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    SolutionBranch b;
    b.root = roots[i];
    b.iterate = iterates[i];
    b.profile = Profile{b.iterate.phi_poly(), b.iterate.w_poly(), roots[i].a_star, bc, lambda};
    b.phi_sup_norm = phi_sup_norm(b.iterate);
    int seen = 0;
    for (int k = 0; k < 100; ++k) {
      const int s = sign(b.iterate.phi(k / 100.0));
      if (s == 0) continue;
      if (seen != 0 && s != seen) b.sign_definite = false;
      seen = s;
    }
    b.residuals = branch_residual_table(b, default_residual_grid());
    out.push_back(std::move(b));
  }
  return out;
}

bool branches_ordered(const SolutionBranch& lower, const SolutionBranch& upper, double tol) {
  for (int k = 0; k <= 100; ++k) {
    const double r = k / 100.0;
    if (lower.iterate.phi(r) > upper.iterate.phi(r) + tol) return false;
  }
  return true;
}

}  // namespace epibvp
