#include "epibvp/critical.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

#include "epibvp/error.hpp"

namespace epibvp {

SweepRecord sweep_one(double lambda, BoundaryKind bc, const ShootingOptions& opts) {
  SweepRecord rec;
  rec.lambda = lambda;
  rec.bc = bc;
  const auto branches = solve(lambda, bc, opts);
  rec.branch_count = static_cast<int>(branches.size());
  for (const auto& b : branches) {
    rec.branches.push_back({b.root.a_star, b.phi_sup_norm, b.root.label});
    rec.profiles.push_back(b.iterate);
    rec.fold_flag = rec.fold_flag || b.root.fold;
  }
  return rec;
}

std::vector<SweepRecord> sweep(const std::vector<double>& lambdas, BoundaryKind bc,
                               const ShootingOptions& opts) {
  std::vector<SweepRecord> out(lambdas.size());
  int jobs = opts.jobs <= 0 ? static_cast<int>(std::max(1u, std::thread::hardware_concurrency()))
                            : opts.jobs;
  jobs = std::min<int>(jobs, static_cast<int>(lambdas.size()));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < lambdas.size(); ++i) out[i] = sweep_one(lambdas[i], bc, opts);
    return out;
  }
  ShootingOptions inner = opts;
  inner.jobs = 1;
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (int t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < lambdas.size(); i = next++) {
        out[i] = sweep_one(lambdas[i], bc, inner);
      }
    });
  }
  pool.clear();
  return out;
}

namespace {

int count(double lambda, BoundaryKind bc, const ShootingOptions& opts) {
  return static_cast<int>(find_branches(lambda, bc, opts).size());
}

}  // namespace

CriticalEstimate find_critical_lambda(BoundaryKind bc, double lo, double hi, double tol,
                                      const ShootingOptions& opts) {
  if (!(tol > 0.0)) throw DomainError("tol must be positive");
  if (!(lo < hi)) throw InvalidBracket("critical bracket needs lo < hi");
  const int n_lo = count(lo, bc, opts);
  if (n_lo < 2) {
    throw InvalidBracket("expected two branches at lambda = " + std::to_string(lo) + ", found " +
                         std::to_string(n_lo));
  }
  const int n_hi = count(hi, bc, opts);
  if (n_hi != 0) {
    throw InvalidBracket("expected no branches at lambda = " + std::to_string(hi) + ", found " +
                         std::to_string(n_hi));
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (count(mid, bc, opts) >= 2) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {bc, 0.5 * (lo + hi), lo, hi, resolve_iterations(opts, bc)};
}

CriticalSensitivity critical_with_sensitivity(BoundaryKind bc, double lo, double hi, double tol,
                                              const ShootingOptions& opts) {
  CriticalSensitivity out;
  out.base = find_critical_lambda(bc, lo, hi, tol, opts);
  const int n = out.base.n_iter_used;
  for (int m : {n - 1, n + 1}) {
    if (m < 1) continue;
    ShootingOptions o = opts;
    o.n_iter = m;
    // The fold moves little between depths; try a narrow bracket first.
    const double near_lo = std::max(lo, out.base.lambda_crit - 1.0);
    const double near_hi = std::min(hi, out.base.lambda_crit + 1.0);
    try {
      out.neighbours.push_back(find_critical_lambda(bc, near_lo, near_hi, tol, o));
      continue;
    } catch (const InvalidBracket&) {
    }
    try {
      out.neighbours.push_back(find_critical_lambda(bc, lo, hi, tol, o));
    } catch (const InvalidBracket&) {
      // The fold moved outside [lo, hi] at this depth; nothing to report.
    }
  }
  return out;
}

double branch_gap(const SweepRecord& record) {
  if (record.branch_count != 2 || record.profiles.size() != 2) {
    throw NotTwoBranches("branch_gap needs exactly two branches, record at lambda = " +
                         std::to_string(record.lambda) + " has " +
                         std::to_string(record.branch_count));
  }
  double gap = 0.0;
  for (int k = 0; k <= 100; ++k) {
    const double r = k / 100.0;
    gap = std::max(gap, std::abs(record.profiles[0].phi(r) - record.profiles[1].phi(r)));
  }
  return gap;
}

}  // namespace epibvp
