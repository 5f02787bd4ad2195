#include "epibvp/vim.hpp"

#include <algorithm>
#include <string>

#include "epibvp/error.hpp"

namespace epibvp {

RPoly ode_defect(const RPoly& w, double lambda, DefectModel model) {
  // t^2 (t^k)'' - t (t^k)' = k (k - 2) t^k.
  std::size_t len = std::max<std::size_t>(w.size(), 5);
  if (model == DefectModel::Full && w.size() > 0) len = std::max(len, 2 * w.size() - 1);
  std::vector<double> f(len, 0.0);
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double kk = static_cast<double>(k);
    f[k] = kk * (kk - 2.0) * w.coeff(k);
  }
  if (model == DefectModel::Full) {
    const auto c = w.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0.0) continue;
      f[2 * i] -= 0.5 * c[i] * c[i];
      for (std::size_t j = i + 1; j < c.size(); ++j) f[i + j] -= c[i] * c[j];
    }
  }
  f[4] -= 0.5 * lambda;
  return RPoly(std::move(f));
}

RPoly vim_step(const RPoly& w, double lambda, DefectModel model) {
  return add(w, apply_vim_kernel(ode_defect(w, lambda, model)));
}

RPoly iterate_from(RPoly w0, double lambda, int n, DefectModel model) {
  if (n < 0) throw DomainError("iteration count must be non-negative");
  RPoly w = std::move(w0);
  for (int i = 0; i < n; ++i) w = vim_step(w, lambda, model);
  return w;
}

RPoly iterate(const VimProblem& problem) {
  if (problem.n_iter < 1) throw DomainError("n_iter must be at least 1");
  return iterate_from(RPoly::monomial(problem.a, 2), problem.lambda, problem.n_iter);
}

std::vector<RPoly> iterate_history(const VimProblem& problem) {
  if (problem.n_iter < 1) throw DomainError("n_iter must be at least 1");
  std::vector<RPoly> out;
  out.reserve(problem.n_iter + 1);
  out.push_back(RPoly::monomial(problem.a, 2));
  for (int i = 0; i < problem.n_iter; ++i) out.push_back(vim_step(out.back(), problem.lambda));
  return out;
}

namespace {

template <class T>
T mu(T t, T r) { return (t - r) / (t * t); }
template <class T>
T mu_dt(T t, T r) { return (2 * r - t) / (t * t * t); }
template <class T>
T mu_dt2(T t, T r) { return (2 * t - 6 * r) / (t * t * t * t); }

}  // namespace

double multiplier(double t, double r) { return mu(t, r); }

double multiplier_dt(double t, double r) { return mu_dt(t, r); }

double multiplier_dt2(double t, double r) { return mu_dt2(t, r); }

std::vector<MultiplierResidual> multiplier_residuals(std::span<const MultiplierSample> samples) {
  // The three terms of each condition grow like 1/t while their sum is zero,
  // so they are combined in extended precision.
  using L = long double;
  std::vector<MultiplierResidual> out;
  out.reserve(samples.size());
  for (const auto& s : samples) {
    if (!(s.t > 0.0)) throw DomainError("multiplier sample needs t > 0, got " + std::to_string(s.t));
    const L t = s.t;
    const L r = s.r;
    MultiplierResidual res;
    // The t = r conditions are singular at r = 0; both tend to 0 there.
    if (s.r > 0.0) {
      res.at_boundary = static_cast<double>(1 - mu_dt(r, r) * r * r - 2 * r * mu(r, r));
      res.vanishing = static_cast<double>(mu(r, r));
    }
    res.interior = static_cast<double>(t * t * mu_dt2(t, r) + 4 * t * mu_dt(t, r) + 2 * mu(t, r));
    out.push_back(res);
  }
  return out;
}

}  // namespace epibvp
