#include <doctest.h>

#include <cmath>

#include "epibvp/error.hpp"
#include "epibvp/recover.hpp"
#include "epibvp/shooting.hpp"
#include "epibvp/vim.hpp"

using namespace epibvp;

namespace {

double sup_gap(const RPoly& p, const RPoly& q) { return sup_norm_on_grid(subtract(p, q)); }

}  // namespace

TEST_CASE("recover_phi examples") {
  const double lambda = 3.0;
  // lambda/16 r^2 (r^2 - 1)  ->  lambda/64 (r^2 - 1)^2
  const RPoly phi_d = recover_phi(RPoly{0, 0, -lambda / 16, 0, lambda / 16});
  CHECK(sup_gap(phi_d, scale(RPoly{1, 0, -2, 0, 1}, lambda / 64)) <= 1e-15);
  // lambda/16 r^2 (r^2 - 2)  ->  lambda/64 (r^4 - 4 r^2 + 3)
  const RPoly phi_n1 = recover_phi(RPoly{0, 0, -lambda / 8, 0, lambda / 16});
  CHECK(sup_gap(phi_n1, scale(RPoly{3, 0, -4, 0, 1}, lambda / 64)) <= 1e-15);
  CHECK(recover_phi(RPoly{}).is_zero());
}

TEST_CASE("recover_phi rejects low-order terms") {
  CHECK_THROWS_AS(recover_phi(RPoly{1.0, 0, 1}), NonRecoverable);
  CHECK_THROWS_AS(recover_phi(RPoly{0, 1.0}), NonRecoverable);
}

TEST_CASE("residual_table") {
  const auto grid = default_residual_grid();
  REQUIRE(grid.size() == 10);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == doctest::Approx(0.9));

  const ResidualTable zero = residual_table(RPoly{}, 0.0, grid);
  for (double v : zero.values) CHECK(v == 0.0);

  const RPoly w = iterate({2.5, -4.0, 5});
  const ResidualTable t = residual_table(w, 2.5, grid);
  CHECK(t.values[0] == 0.0);
  // agrees with the defect polynomial at every node
  const RPoly f = ode_defect(w, 2.5);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(t.values[i] == doctest::Approx(evaluate(f, grid[i])).epsilon(1e-12));
  }
  const ResidualTable s = residual_table(w, 2.5, grid, ResidualForm::Scaled);
  CHECK(s.values[0] == 0.0);
  CHECK(s.values[5] == doctest::Approx(2 * t.values[5] / grid[5]));
}

TEST_CASE("solved branch residual tables match the defect of the exported iterate") {
  const auto branches = solve(0.0, BoundaryKind::NavierOne);
  REQUIRE(branches.size() == 2);
  for (const auto& b : branches) {
    const auto& v = b.residuals.values;
    REQUIRE(v.size() == 10);
    CHECK(v[0] == 0.0);
    const ResidualTable direct = residual_table(b.profile.w, 0.0, default_residual_grid());
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(v[i] - direct.values[i]) <= 1e-12);
    if (b.root.label == BranchLabel::Lower) CHECK(b.residuals.max_abs() == 0.0);
    if (b.root.label == BranchLabel::Upper) CHECK(b.residuals.max_abs() > 0.0);
  }
}

TEST_CASE("linear_approximation closed forms") {
  const Profile d = linear_approximation(BoundaryKind::Dirichlet, 1.0);
  CHECK(evaluate(d.phi, 0.0) == doctest::Approx(1.0 / 64));
  const Profile n2 = linear_approximation(BoundaryKind::NavierTwo, 1.0);
  CHECK(evaluate(n2.phi, 0.0) == doctest::Approx(5.0 / 64));
  const Profile n1 = linear_approximation(BoundaryKind::NavierOne, 2.0);
  CHECK(evaluate(n1.phi, 0.0) == doctest::Approx(6.0 / 64));
  for (BoundaryKind bc : {BoundaryKind::Dirichlet, BoundaryKind::NavierOne, BoundaryKind::NavierTwo}) {
    const Profile z = linear_approximation(bc, 0.0);
    CHECK(z.phi.is_zero());
    CHECK(z.w.is_zero());
    const Profile p = linear_approximation(bc, 0.8);
    // each closed form is consistent with the term rule and its boundary condition
    CHECK(sup_gap(recover_phi(p.w), p.phi) <= 1e-15);
    CHECK(std::abs(phi_boundary_condition(bc, p.phi)) <= 1e-15);
    CHECK(std::abs(evaluate(p.phi, 1.0)) <= 1e-15);
  }
}

TEST_CASE("linear regime: lower branch is within 0.05 lambda^2 of the closed form") {
  for (BoundaryKind bc : {BoundaryKind::Dirichlet, BoundaryKind::NavierOne, BoundaryKind::NavierTwo}) {
    for (double lambda : {-0.1, -0.03, 0.02, 0.1}) {
      const auto branches = solve(lambda, bc);
      REQUIRE(branches.size() == 2);
      const auto& lower = std::abs(branches[0].root.a_star) < std::abs(branches[1].root.a_star) ? branches[0]
                                                                                              : branches[1];
      const Profile lin = linear_approximation(bc, lambda);
      double gap = 0.0;
      for (int k = 0; k <= 100; ++k) {
        const double r = k / 100.0;
        gap = std::max(gap, std::abs(lower.iterate.phi(r) - evaluate(lin.phi, r)));
      }
      CAPTURE(to_string(bc));
      CAPTURE(lambda);
      CHECK(gap <= 0.05 * lambda * lambda);
    }
  }
}

TEST_CASE("property: recovered profiles of solved branches") {
  const struct {
    BoundaryKind bc;
    std::vector<double> lambdas;
  } cases[] = {
      {BoundaryKind::NavierOne, {0, 15, 31, -40, -100}},
      {BoundaryKind::NavierTwo, {0, 10, -50, -160}},
      {BoundaryKind::Dirichlet, {0, 100, 168.5, -1, -25}},
  };
  for (const auto& c : cases) {
    for (double lambda : c.lambdas) {
      for (const auto& b : solve(lambda, c.bc)) {
        CAPTURE(to_string(c.bc));
        CAPTURE(lambda);
        CAPTURE(b.root.a_star);
        const RPoly& w = b.profile.w;
        const RPoly& phi = b.profile.phi;
        const RPoly dphi = differentiate(phi);
        // r phi' = w, relative to the size of the terms being summed; the large
        // Dirichlet branches have coefficients near 1e11.
        for (int k = 0; k <= 100; ++k) {
          const double r = k / 100.0;
          const double err = std::abs(r * evaluate_accurate(dphi, r) - evaluate_accurate(w, r));
          CHECK(err <= 1e-12 * std::max(1.0, absolute_evaluate(w, r)));
        }
        // The double export of phi carries the rounding of coefficients near 1e10
        // on the large Dirichlet branches; the binary128 form is exact to 1e-12.
        CHECK(std::abs(evaluate_accurate(phi, 1.0)) <= 1e-12 * std::max(1.0, absolute_evaluate(phi, 1.0)));
        CHECK(std::abs(b.iterate.phi(1.0)) <= 1e-12);
        CHECK(dphi.coeff(0) == 0.0);
        // the boundary condition on phi is the boundary functional on w
        const double bc_value = b.iterate.w_prime(1.0) - (c.bc == BoundaryKind::NavierOne ? 0.0 : b.iterate.w(1.0));
        const double expected = c.bc == BoundaryKind::Dirichlet ? b.iterate.w(1.0) : bc_value;
        CHECK(std::abs(expected) <= 1e-8);
        if (std::abs(b.root.a_star) < 40) CHECK(std::abs(phi_boundary_condition(c.bc, phi)) <= 1e-8);
      }
    }
  }
}
