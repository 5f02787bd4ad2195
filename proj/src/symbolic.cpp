#include <algorithm>
#include <cmath>
#include <string>

#include "epibvp/error.hpp"
#include "epibvp/vim.hpp"

namespace epibvp {

APoly::APoly(int max_a_power, int max_lambda_power)
    : max_a_(max_a_power),
      max_l_(max_lambda_power),
      c_(static_cast<std::size_t>(max_a_power + 1) * static_cast<std::size_t>(max_lambda_power + 1),
         0.0) {}

std::size_t APoly::index(int a_power, int lambda_power) const {
  return static_cast<std::size_t>(a_power) * static_cast<std::size_t>(max_l_ + 1) +
         static_cast<std::size_t>(lambda_power);
}

double APoly::coeff(int a_power, int lambda_power) const {
  if (a_power < 0 || lambda_power < 0 || a_power > max_a_ || lambda_power > max_l_) return 0.0;
  return c_[index(a_power, lambda_power)];
}

void APoly::set(int a_power, int lambda_power, double value) {
  if (a_power < 0 || lambda_power < 0 || a_power > max_a_ || lambda_power > max_l_) {
    throw DomainError("APoly exponent out of range");
  }
  c_[index(a_power, lambda_power)] = value;
}

std::vector<APolyTerm> APoly::terms() const {
  std::vector<APolyTerm> out;
  for (int j = 0; j <= max_a_; ++j) {
    for (int l = 0; l <= max_l_; ++l) {
      const double v = c_[index(j, l)];
      if (v != 0.0) out.push_back({j, l, 2 * j + 4 * l, v});
    }
  }
  return out;
}

RPoly APoly::specialize(double a, double lambda) const {
  std::vector<double> r(static_cast<std::size_t>(2 * max_a_ + 4 * max_l_ + 1), 0.0);
  for (int j = 0; j <= max_a_; ++j) {
    for (int l = 0; l <= max_l_; ++l) {
      const double v = c_[index(j, l)];
      if (v != 0.0) r[2 * j + 4 * l] += v * std::pow(a, j) * std::pow(lambda, l);
    }
  }
  return RPoly(std::move(r));
}

namespace {

// One correction step with a, lambda symbolic. A term a^j lambda^l sits at
// r^(2j + 4l) = r^k, where the linear operator contributes k (k - 2) and the
// kernel divides by -k (k - 1).
APoly symbolic_step(const APoly& w) {
  const int ja = w.max_a_power();
  const int jl = w.max_lambda_power();
  APoly next(2 * ja, std::max(2 * jl, 1));
  APoly defect(2 * ja, std::max(2 * jl, 1));
  for (int j = 0; j <= ja; ++j) {
    for (int l = 0; l <= jl; ++l) {
      const double c = w.coeff(j, l);
      if (c == 0.0) continue;
      const double k = 2.0 * j + 4.0 * l;
      defect.set(j, l, defect.coeff(j, l) + k * (k - 2.0) * c);
      next.set(j, l, c);
    }
  }
  for (int j1 = 0; j1 <= ja; ++j1) {
    for (int l1 = 0; l1 <= jl; ++l1) {
      const double c1 = w.coeff(j1, l1);
      if (c1 == 0.0) continue;
      for (int j2 = 0; j2 <= ja; ++j2) {
        for (int l2 = 0; l2 <= jl; ++l2) {
          const double c2 = w.coeff(j2, l2);
          if (c2 == 0.0) continue;
          defect.set(j1 + j2, l1 + l2, defect.coeff(j1 + j2, l1 + l2) - 0.5 * c1 * c2);
        }
      }
    }
  }
  defect.set(0, 1, defect.coeff(0, 1) - 0.5);
  for (int j = 0; j <= defect.max_a_power(); ++j) {
    for (int l = 0; l <= defect.max_lambda_power(); ++l) {
      const double f = defect.coeff(j, l);
      if (f == 0.0) continue;
      const double k = 2.0 * j + 4.0 * l;
      if (k < 2.0) throw NonIntegrableDefect("symbolic defect has a term below r^2");
      next.set(j, l, next.coeff(j, l) - f / (k * (k - 1.0)));
    }
  }
  return next;
}

}  // namespace

APoly symbolic_iterate(int n, int max_iterations) {
  if (n < 1) throw DomainError("symbolic_iterate needs n >= 1");
  if (n > max_iterations) {
    throw IterationBudgetExceeded("symbolic_iterate(" + std::to_string(n) + ") exceeds the budget of " +
                                  std::to_string(max_iterations) + " iterations");
  }
  APoly w(1, 0);
  w.set(1, 0, 1.0);
  for (int i = 0; i < n; ++i) w = symbolic_step(w);
  return w;
}

}  // namespace epibvp
