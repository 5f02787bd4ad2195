#include "epibvp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "epibvp/error.hpp"

namespace epibvp {

IvpState series_start(double a, double lambda, double r0, int series_terms) {
  if (!(r0 > 0.0)) throw DomainError("series start needs r0 > 0");
  IvpState s{a * r0 * r0, 2.0 * a * r0};
  if (series_terms >= 2) {
    const double c4 = (a * a + lambda) / 16.0;
    s.w += c4 * r0 * r0 * r0 * r0;
    s.w_prime += 4.0 * c4 * r0 * r0 * r0;
  }
  return s;
}

namespace {

void validate(const IvpConfig& cfg) {
  if (!(cfg.r0 > 0.0 && cfg.r0 < 1.0)) throw DomainError("IVP r0 must lie in (0, 1)");
  if (!(cfg.h > 0.0 && cfg.h <= 1e-3)) throw DomainError("IVP step h must lie in (0, 1e-3]");
}

struct Rhs {
  double lambda;
  IvpState operator()(double r, IvpState s) const {
    return {s.w_prime, s.w_prime / r + s.w * s.w / (2.0 * r * r) + 0.5 * lambda * r * r};
  }
};

IvpState rk4_step(const Rhs& f, double r, IvpState s, double h) {
  auto shift = [](IvpState x, IvpState k, double c) {
    return IvpState{x.w + c * k.w, x.w_prime + c * k.w_prime};
  };
  const IvpState k1 = f(r, s);
  const IvpState k2 = f(r + 0.5 * h, shift(s, k1, 0.5 * h));
  const IvpState k3 = f(r + 0.5 * h, shift(s, k2, 0.5 * h));
  const IvpState k4 = f(r + h, shift(s, k3, h));
  return {s.w + h / 6.0 * (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w),
          s.w_prime + h / 6.0 * (k1.w_prime + 2.0 * k2.w_prime + 2.0 * k3.w_prime + k4.w_prime)};
}

template <class Visit>
IvpState integrate(double a, double lambda, const IvpConfig& cfg, Visit&& visit) {
  validate(cfg);
  const Rhs f{lambda};
  IvpState s = series_start(a, lambda, cfg.r0, cfg.series_terms);
  const long steps = std::lround(std::ceil((1.0 - cfg.r0) / cfg.h - 1e-9));
  visit(cfg.r0, s);
  for (long i = 0; i < steps; ++i) {
    const double r = cfg.r0 + i * cfg.h;
    const double next = i + 1 == steps ? 1.0 : cfg.r0 + (i + 1) * cfg.h;
    s = rk4_step(f, r, s, next - r);
    if (!(std::abs(s.w) <= cfg.overflow)) throw IvpOverflow(next, s.w, s.w_prime);
    visit(next, s);
  }
  return s;
}

}  // namespace

IvpTrajectory ivp_trajectory(double a, double lambda, const IvpConfig& cfg) {
  IvpTrajectory t;
  integrate(a, lambda, cfg, [&](double r, IvpState s) {
    t.r.push_back(r);
    t.w.push_back(s.w);
    t.w_prime.push_back(s.w_prime);
  });
  return t;
}

IvpState ivp_integrate(double a, double lambda, const IvpConfig& cfg) {
  return integrate(a, lambda, cfg, [](double, IvpState) {});
}

std::vector<double> IvpTrajectory::phi() const {
  std::vector<double> out(r.size(), 0.0);
  for (std::size_t i = r.size() - 1; i-- > 0;) {
    const double g0 = w[i] / r[i];
    const double g1 = w[i + 1] / r[i + 1];
    out[i] = out[i + 1] - 0.5 * (r[i + 1] - r[i]) * (g0 + g1);
  }
  return out;
}

double IvpTrajectory::phi_at(const std::vector<double>& phi_nodes, double x) const {
  if (x <= r.front()) return phi_nodes.front();
  if (x >= r.back()) return phi_nodes.back();
  const auto it = std::upper_bound(r.begin(), r.end(), x);
  const std::size_t j = static_cast<std::size_t>(it - r.begin());
  const double t = (x - r[j - 1]) / (r[j] - r[j - 1]);
  return (1.0 - t) * phi_nodes[j - 1] + t * phi_nodes[j];
}

double oracle_residual(double a, double lambda, BoundaryKind bc, const IvpConfig& cfg) {
  try {
    const IvpState s = ivp_integrate(a, lambda, cfg);
    return boundary_functional(bc, s.w, s.w_prime);
  } catch (const IvpOverflow& e) {
    const double inf = std::numeric_limits<double>::infinity();
    const double w = e.w() < 0.0 ? -inf : inf;
    const double wp = e.w_prime() < 0.0 ? -inf : inf;
    // With both at infinity the NavierTwo difference is undefined; w' dominates w
    // at blow-up, so its sign decides.
    if (bc == BoundaryKind::NavierTwo) return -wp;
    return boundary_functional(bc, w, wp);
  }
}

std::vector<double> oracle_branches(double lambda, BoundaryKind bc, const OracleOptions& opts) {
  if (!(opts.a_lo < opts.a_hi) || opts.grid_points < 2) throw DomainError("invalid oracle window");
  std::vector<double> grid(opts.grid_points);
  std::vector<double> values(opts.grid_points);
  for (int i = 0; i < opts.grid_points; ++i) {
    grid[i] = opts.a_lo + (opts.a_hi - opts.a_lo) * i / (opts.grid_points - 1);
    values[i] = oracle_residual(grid[i], lambda, bc, opts.ivp);
  }
  auto sgn = [](double x) { return (x > 0.0) - (x < 0.0); };
  std::vector<double> roots;
  for (int i = 0; i < opts.grid_points; ++i) {
    if (values[i] == 0.0) {
      roots.push_back(grid[i]);
      continue;
    }
    if (i == 0 || values[i - 1] == 0.0 || sgn(values[i - 1]) == sgn(values[i])) continue;
    double lo = grid[i - 1];
    double hi = grid[i];
    double f_lo = values[i - 1];
    if (lo < 0.0 && hi > 0.0 && oracle_residual(0.0, lambda, bc, opts.ivp) == 0.0) {
      roots.push_back(0.0);
      continue;
    }
    while (hi - lo > opts.root_tol) {
      const double mid = 0.5 * (lo + hi);
      const double f_mid = oracle_residual(mid, lambda, bc, opts.ivp);
      if (f_mid == 0.0) {
        lo = hi = mid;
        break;
      }
      if (sgn(f_mid) == sgn(f_lo)) {
        lo = mid;
        f_lo = f_mid;
      } else {
        hi = mid;
      }
    }
    roots.push_back(0.5 * (lo + hi));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace epibvp
