#pragma once

// Scalar-generic iteration on the even-power representation used by the
// shooting solver.
//
// Starting from a r^2, every iterate only contains even powers of r, so it is
// stored as w(r) = sum_j b_j u^j with u = r^2. In these coordinates the linear
// operator multiplies u^j by 4 j (j - 1) and the kernel divides by
// -2 j (2 j - 1). This quarters the convolution work relative to RPoly and lets
// the boundary functional be evaluated in DoubleDouble or Quad arithmetic.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "epibvp/boundary.hpp"
#include "epibvp/poly.hpp"
#include "epibvp/vim.hpp"
#include "epibvp/wide_float.hpp"

namespace epibvp::even {

/// Equation defect of an even-power iterate, in the same u = r^2 basis.
template <class T>
std::vector<T> defect(const std::vector<T>& b, double lambda, DefectModel model = DefectModel::Full) {
  const std::size_t d = b.size();
  const std::size_t len =
      std::max<std::size_t>(model == DefectModel::Full && d > 0 ? 2 * d - 1 : d, 3);
  std::vector<T> f(len, T(0.0));
  for (std::size_t j = 1; j < d; ++j) {
    const double jj = static_cast<double>(j);
    f[j] = b[j] * (4.0 * jj * (jj - 1.0));
  }
  if (model == DefectModel::Full) {
    for (std::size_t i = 1; i < d; ++i) {
      f[2 * i] = f[2 * i] - b[i] * b[i] * 0.5;
      for (std::size_t j = i + 1; j < d; ++j) f[i + j] = f[i + j] - b[i] * b[j];
    }
  }
  f[2] = f[2] - T(0.5 * lambda);
  return f;
}

/// n steps from a r^2; b[j] multiplies u^j.
template <class T>
std::vector<T> iterate(double a, double lambda, int n, DefectModel model = DefectModel::Full) {
  std::vector<T> b{T(0.0), T(a)};
  for (int step = 0; step < n; ++step) {
    const std::vector<T> f = defect(b, lambda, model);
    b.resize(f.size(), T(0.0));
    for (std::size_t j = 1; j < f.size(); ++j) {
      const double jj = static_cast<double>(j);
      b[j] = b[j] - f[j] / (2.0 * jj * (2.0 * jj - 1.0));
    }
  }
  return b;
}

/// Horner evaluation in u.
template <class T>
T horner(const std::vector<T>& c, T u) {
  T acc(0.0);
  for (std::size_t j = c.size(); j-- > 0;) acc = acc * u + c[j];
  return acc;
}

/// Boundary residual of an even-power iterate together with a bound on its
/// rounding error.
struct BoundaryValue {
  double value = 0.0;
  double error_bound = 0.0;
};

template <class T>
BoundaryValue boundary_value(const std::vector<T>& b, BoundaryKind bc) {
  T w1(0.0);
  T w1p(0.0);
  double magnitude = 0.0;
  for (std::size_t j = 0; j < b.size(); ++j) {
    const double jj = static_cast<double>(j);
    w1 = w1 + b[j];
    w1p = w1p + b[j] * (2.0 * jj);
    magnitude += std::abs(to_double(b[j])) * (1.0 + 2.0 * jj);
  }
  // Each coefficient carries a relative error of a few hundred ulps after
  // seven rounds of convolution; the boundary value is an alternating sum of
  // them. Measured errors stay below about 100 u * magnitude over the default
  // a-window for all three families; the constant keeps a factor of 5 above that.
  constexpr double kErrorGrowth = 512.0;
  return {to_double(boundary_functional<T>(bc, w1, w1p)),
          kErrorGrowth * unit_roundoff<T>() * magnitude};
}

template <class T>
RPoly to_rpoly(const std::vector<T>& b) {
  std::vector<double> c(b.empty() ? 0 : 2 * b.size() - 1, 0.0);
  for (std::size_t j = 0; j < b.size(); ++j) c[2 * j] = to_double(b[j]);
  return RPoly(std::move(c));
}

}  // namespace epibvp::even
