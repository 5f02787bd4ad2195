#include "epibvp/poly.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "epibvp/error.hpp"
#include "epibvp/wide_float.hpp"

namespace epibvp {

RPoly::RPoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

RPoly::RPoly(std::initializer_list<double> coeffs) : coeffs_(coeffs) { trim(); }

RPoly RPoly::monomial(double c, std::size_t power) {
  std::vector<double> v(power + 1, 0.0);
  v[power] = c;
  return RPoly(std::move(v));
}

void RPoly::trim() noexcept {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

RPoly add(const RPoly& p, const RPoly& q) {
  std::vector<double> out(std::max(p.size(), q.size()), 0.0);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = p.coeff(k) + q.coeff(k);
  return RPoly(std::move(out));
}

RPoly subtract(const RPoly& p, const RPoly& q) {
  std::vector<double> out(std::max(p.size(), q.size()), 0.0);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = p.coeff(k) - q.coeff(k);
  return RPoly(std::move(out));
}

RPoly scale(const RPoly& p, double factor) {
  std::vector<double> out(p.coeffs().begin(), p.coeffs().end());
  for (double& c : out) c *= factor;
  return RPoly(std::move(out));
}

RPoly mul(const RPoly& p, const RPoly& q) {
  if (p.is_zero() || q.is_zero()) return {};
  const auto a = p.coeffs();
  const auto b = q.coeffs();
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return RPoly(std::move(out));
}

RPoly differentiate(const RPoly& p) {
  if (p.size() <= 1) return {};
  std::vector<double> out(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) out[k - 1] = static_cast<double>(k) * p.coeff(k);
  return RPoly(std::move(out));
}

double evaluate(const RPoly& p, double r) {
  const auto c = p.coeffs();
  double acc = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * r + c[k];
  return acc;
}

double evaluate_accurate(const RPoly& p, double r) {
  // Horner with error-free transformations (Graillat, Langlois, Louvet).
  const auto c = p.coeffs();
  double s = 0.0;
  double err = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) {
    const double prod = s * r;
    const double prod_err = std::fma(s, r, -prod);
    const DoubleDouble sum = dd_detail::two_sum(prod, c[k]);
    s = sum.hi;
    err = err * r + (prod_err + sum.lo);
  }
  return s + err;
}

double absolute_evaluate(const RPoly& p, double r) {
  const auto c = p.coeffs();
  const double x = std::abs(r);
  double acc = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + std::abs(c[k]);
  return acc;
}

RPoly apply_vim_kernel(const RPoly& f) {
  if (!f.vanishes_to_second_order()) {
    throw NonIntegrableDefect("defect has a nonzero r^0 or r^1 coefficient (" +
                              std::to_string(f.coeff(0)) + ", " + std::to_string(f.coeff(1)) +
                              "); the correction integral diverges at t = 0");
  }
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t k = 2; k < f.size(); ++k) {
    const double kk = static_cast<double>(k);
    out[k] = -f.coeff(k) / (kk * (kk - 1.0));
  }
  return RPoly(std::move(out));
}

double sup_norm_on_grid(const RPoly& p, int intervals) {
  double best = 0.0;
  for (int i = 0; i <= intervals; ++i) {
    const double r = static_cast<double>(i) / intervals;
    best = std::max(best, std::abs(evaluate(p, r)));
  }
  return best;
}

}  // namespace epibvp
