#include "epibvp/recover.hpp"

#include <algorithm>
#include <cmath>

#include "epibvp/error.hpp"
#include "epibvp/vim.hpp"
#include "epibvp/wide_float.hpp"

namespace epibvp {

double ResidualTable::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> default_residual_grid() {
  std::vector<double> g;
  for (int i = 0; i < 10; ++i) g.push_back(i / 10.0);
  return g;
}

std::vector<double> uniform_grid(int intervals) {
  std::vector<double> g;
  g.reserve(intervals + 1);
  for (int i = 0; i <= intervals; ++i) g.push_back(static_cast<double>(i) / intervals);
  return g;
}

RPoly recover_phi(const RPoly& w) {
  if (!w.vanishes_to_second_order()) {
    throw NonRecoverable("w has a nonzero r^0 or r^1 coefficient; phi' = w/r is singular at 0");
  }
  if (w.is_zero()) return {};
  std::vector<double> phi(w.size(), 0.0);
  DoubleDouble constant(0.0);
  for (std::size_t k = 2; k < w.size(); ++k) {
    phi[k] = w.coeff(k) / static_cast<double>(k);
    constant -= DoubleDouble(phi[k]);
  }
  phi[0] = to_double(constant);
  return RPoly(std::move(phi));
}

ResidualTable residual_table(const RPoly& w, double lambda, const std::vector<double>& grid,
                             ResidualForm form) {
  const RPoly defect = ode_defect(w, lambda);
  ResidualTable table;
  table.grid = grid;
  table.lambda = lambda;
  table.form = form;
  table.values.reserve(grid.size());
  for (double r : grid) {
    const double raw = evaluate_accurate(defect, r);
    if (form == ResidualForm::Raw) {
      table.values.push_back(raw);
    } else {
      table.values.push_back(r == 0.0 ? 0.0 : 2.0 * raw / r);
    }
  }
  return table;
}

Profile linear_approximation(BoundaryKind bc, double lambda) {
  // w = lambda/16 r^2 (r^2 - m) with m = 1, 2, 3 for the three families.
  double m = 1.0;
  switch (bc) {
    case BoundaryKind::Dirichlet:
      m = 1.0;
      break;
    case BoundaryKind::NavierOne:
      m = 2.0;
      break;
    case BoundaryKind::NavierTwo:
      m = 3.0;
      break;
  }
  Profile p;
  p.bc = bc;
  p.lambda = lambda;
  p.w = RPoly{0.0, 0.0, -m * lambda / 16.0, 0.0, lambda / 16.0};
  // phi = lambda/64 (r^4 - 2 m r^2 + 2 m - 1)
  p.phi = RPoly{lambda / 64.0 * (2.0 * m - 1.0), 0.0, -lambda / 64.0 * 2.0 * m, 0.0, lambda / 64.0};
  p.a_star = p.w.coeff(2);
  return p;
}

double phi_boundary_condition(BoundaryKind bc, const RPoly& phi) {
  const RPoly d1 = differentiate(phi);
  const RPoly d2 = differentiate(d1);
  switch (bc) {
    case BoundaryKind::Dirichlet:
      return evaluate_accurate(d1, 1.0);
    case BoundaryKind::NavierOne:
      return evaluate_accurate(add(d1, d2), 1.0);
    case BoundaryKind::NavierTwo:
      return evaluate_accurate(d2, 1.0);
  }
  return 0.0;
}

}  // namespace epibvp
