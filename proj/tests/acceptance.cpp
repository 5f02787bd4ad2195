// Acceptance suite: one PASS/FAIL line per criterion.
//
//   epibvp_acceptance            run all criteria
//   epibvp_acceptance --only 7   run one criterion
//
// Exit status is nonzero if any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "epibvp/critical.hpp"
#include "epibvp/error.hpp"
#include "epibvp/oracle.hpp"
#include "epibvp/recover.hpp"
#include "epibvp/shooting.hpp"
#include "epibvp/vim.hpp"

using namespace epibvp;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const char* name(BoundaryKind bc) { return to_string(bc).data(); }

// Critical values found by criterion 5, reused by criterion 6.
std::map<BoundaryKind, double> g_critical;

double critical_for(BoundaryKind bc) {
  if (!g_critical.count(bc)) {
    static const std::map<BoundaryKind, std::pair<double, double>> brackets{
        {BoundaryKind::NavierTwo, {5.0, 20.0}},
        {BoundaryKind::NavierOne, {20.0, 40.0}},
        {BoundaryKind::Dirichlet, {140.0, 200.0}}};
    const auto [lo, hi] = brackets.at(bc);
    g_critical[bc] = find_critical_lambda(bc, lo, hi, bc == BoundaryKind::Dirichlet ? 0.1 : 0.01).lambda_crit;
  }
  return g_critical[bc];
}

// ---------------------------------------------------------------------------

Outcome symbolic_reproduction() {
  using Key = std::pair<int, int>;  // (power of a, power of lambda)
  const std::map<Key, double> w1{{{1, 0}, 1.0}, {{2, 0}, 1.0 / 24}, {{0, 1}, 1.0 / 24}};
  const std::map<Key, double> w2{{{4, 0}, 1.0 / 64512}, {{3, 0}, 1.0 / 720}, {{2, 1}, 1.0 / 32256},
                                 {{2, 0}, 1.0 / 18},    {{1, 1}, 1.0 / 720}, {{1, 0}, 1.0},
                                 {{0, 2}, 1.0 / 64512}, {{0, 1}, 1.0 / 18}};
  double worst = 0.0;
  bool shape_ok = true;
  for (const auto& [n, expected] : {std::pair{1, w1}, std::pair{2, w2}}) {
    const auto terms = symbolic_iterate(n).terms();
    shape_ok = shape_ok && terms.size() == expected.size();
    for (const auto& t : terms) {
      const auto it = expected.find({t.a_power, t.lambda_power});
      if (it == expected.end() || t.r_power != 2 * t.a_power + 4 * t.lambda_power) {
        shape_ok = false;
        continue;
      }
      worst = std::max(worst, std::abs(t.coeff - it->second) / it->second);
    }
  }
  return {shape_ok && worst <= 1e-14, fmt("terms match=%s, max relative error %.2e (tol 1e-14)",
                                          shape_ok ? "yes" : "no", worst)};
}

Outcome kernel_correctness() {
  double worst = 0.0;
  for (int k = 2; k <= 10; ++k) {
    auto f = [k](double t) { return (t - 1.0) * std::pow(t, k - 2); };
    const double q = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, 1.0, 15, 1e-14);
    const double kernel = evaluate(apply_vim_kernel(RPoly::monomial(1.0, k)), 1.0);
    worst = std::max(worst, std::abs(kernel - q));
  }
  return {worst <= 1e-10, fmt("max |kernel - quadrature| over k=2..10: %.2e (tol 1e-10)", worst)};
}

Outcome multiplier_stationarity() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<MultiplierSample> samples;
  for (int i = 0; i < 100; ++i) {
    // Half of the samples sit on the diagonal t = r where all three apply.
    const double r = u(rng);
    const double t = i % 2 == 0 ? std::max(r, 1e-3) : 1.0 - u(rng) * 0.999;
    samples.push_back({t, i % 2 == 0 ? t : r});
  }
  double worst = 0.0;
  for (const auto& res : multiplier_residuals(samples)) {
    worst = std::max({worst, std::abs(res.at_boundary), std::abs(res.vanishing), std::abs(res.interior)});
  }
  return {worst <= 1e-12, fmt("max residual over 100 samples: %.2e (tol 1e-12)", worst)};
}

Outcome trivial_exactness() {
  bool ok = true;
  std::string detail;
  for (auto bc : {BoundaryKind::NavierOne, BoundaryKind::NavierTwo, BoundaryKind::Dirichlet}) {
    const auto branches = solve(0.0, bc);
    double best = INFINITY;
    bool zero_table = false;
    for (const auto& b : branches) {
      if (std::abs(b.root.a_star) < std::abs(best)) {
        best = b.root.a_star;
        zero_table = std::all_of(b.residuals.values.begin(), b.residuals.values.end(),
                                 [](double v) { return v == 0.0; });
      }
    }
    const bool pass = std::abs(best) <= 1e-13 && zero_table;
    ok = ok && pass;
    detail += fmt("%s |a*|=%.1e zero-table=%s; ", name(bc), std::abs(best), zero_table ? "yes" : "no");
  }
  return {ok, detail};
}

Outcome critical_reproduction() {
  struct Case {
    BoundaryKind bc;
    double lo, hi, tol, expected, window;
  };
  const Case cases[] = {{BoundaryKind::NavierTwo, 5, 20, 0.01, 11.34, 0.5},
                        {BoundaryKind::NavierOne, 20, 40, 0.01, 31.94, 1.0},
                        {BoundaryKind::Dirichlet, 140, 200, 0.1, 169.0, 10.0}};
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    const auto s = critical_with_sensitivity(c.bc, c.lo, c.hi, c.tol);
    g_critical[c.bc] = s.base.lambda_crit;
    const bool pass = std::abs(s.base.lambda_crit - c.expected) <= c.window;
    ok = ok && pass;
    detail += fmt("%s %.4f (n=%d, target %.2f+-%.1f)", name(c.bc), s.base.lambda_crit, s.base.n_iter_used,
                  c.expected, c.window);
    for (const auto& e : s.neighbours) detail += fmt(" [n=%d: %+.4f]", e.n_iter_used, e.lambda_crit - s.base.lambda_crit);
    detail += "; ";
  }
  return {ok, detail};
}

const std::map<BoundaryKind, std::vector<double>> kTabulated{
    {BoundaryKind::NavierOne, {0, 15, 20, 31, -1, -40, -60, -100}},
    {BoundaryKind::NavierTwo, {0, 8, 10, 11.34, -1, -50, -100, -160}},
    {BoundaryKind::Dirichlet, {0, 100, 150, 168.5, -1, -10, -15, -25}}};

Outcome branch_counts() {
  bool ok = true;
  std::string detail;
  for (const auto& [bc, lambdas] : kTabulated) {
    int good = 0;
    for (double l : lambdas) {
      const auto n = find_branches(l, bc).size();
      if (n == 2) {
        ++good;
      } else {
        detail += fmt("%s lambda=%g has %zu branches; ", name(bc), l, n);
      }
    }
    const double above = 1.5 * critical_for(bc);
    const auto n_above = find_branches(above, bc).size();
    ok = ok && good == static_cast<int>(lambdas.size()) && n_above == 0;
    detail += fmt("%s %d/%zu tabulated with 2, %zu at 1.5*crit=%.2f; ", name(bc), good, lambdas.size(),
                  n_above, above);
  }
  return {ok, detail};
}

struct ReferenceTable {
  int number;
  BoundaryKind bc;
  BranchLabel label;
  std::vector<double> lambdas;
  std::vector<double> column_max;
};

// Reference column maxima of |residual|: twelve tables of four lambdas each.
const std::vector<ReferenceTable> kReferenceTables{
    {1, BoundaryKind::NavierOne, BranchLabel::Upper, {0, 15, 20, 31}, {0.035139344, 0.02270068, 0.01667245, 0.007033732}},
    {2, BoundaryKind::NavierOne, BranchLabel::Lower, {0, 15, 20, 31}, {0.0, 0.00097216, 0.000542526, 0.005612047}},
    {3, BoundaryKind::NavierOne, BranchLabel::Positive, {-1, -40, -60, -100}, {0.035680636, 0.046053985, 0.05065471, 0.059343222}},
    {4, BoundaryKind::NavierOne, BranchLabel::Negative, {-1, -40, -60, -100}, {0.000351386, 0.042091333, 0.08437909, 0.210205598}},
    {5, BoundaryKind::NavierTwo, BranchLabel::Upper, {0, 8, 10, 11.34}, {0.005675344, 0.005369172, 0.005271528, 0.003704074}},
    {6, BoundaryKind::NavierTwo, BranchLabel::Lower, {0, 8, 10, 11.34}, {0.0, 0.000436068, 0.001087285, 0.003501342}},
    {7, BoundaryKind::NavierTwo, BranchLabel::Positive, {-1, -50, -100, -160}, {0.005768587, 0.031769072, 0.043629852, 0.055617692}},
    {8, BoundaryKind::NavierTwo, BranchLabel::Negative, {-1, -50, -100, -160}, {0.000364852, 0.072242013, 0.226171011, 0.497848871}},
    {9, BoundaryKind::Dirichlet, BranchLabel::Lower, {0, 100, 150, 168.5}, {0.0, 0.053923736, 0.025416409, 0.083542791}},
    {10, BoundaryKind::Dirichlet, BranchLabel::Upper, {0, 100, 150, 168.5}, {0.756076643, 0.455082275, 0.218123002, 0.107541122}},
    {11, BoundaryKind::Dirichlet, BranchLabel::Negative, {-1, -10, -15, -25}, {0.0010039, 0.010388382, 0.015872278, 0.027416471}},
    {12, BoundaryKind::Dirichlet, BranchLabel::Positive, {-1, -10, -15, -25}, {0.802566715, 0.158409209, 0.165767258, 0.186695393}},
};

bool within_factor(double ours, double reference, double factor) {
  if (reference == 0.0) return ours == 0.0;
  return ours <= factor * reference && ours >= reference / factor;
}

Outcome residual_magnitudes() {
  int columns = 0;
  int pass_raw = 0;
  int pass_scaled = 0;
  std::string detail;
  for (const auto& t : kReferenceTables) {
    std::string row = fmt("\n    T%-2d %-9s %-8s", t.number, name(t.bc), to_string(t.label).data());
    for (std::size_t i = 0; i < t.lambdas.size(); ++i) {
      ++columns;
      const auto branches = solve(t.lambdas[i], t.bc);
      const SolutionBranch* hit = nullptr;
      for (const auto& b : branches) {
        if (b.root.label == t.label) hit = &b;
      }
      if (!hit) {
        row += fmt(" l=%g:missing", t.lambdas[i]);
        continue;
      }
      const double raw = branch_residual_table(*hit, default_residual_grid()).max_abs();
      const double scaled = branch_residual_table(*hit, default_residual_grid(), ResidualForm::Scaled).max_abs();
      const bool ok = within_factor(raw, t.column_max[i], 3.0);
      pass_raw += ok;
      pass_scaled += within_factor(scaled, t.column_max[i], 3.0);
      const double ratio = t.column_max[i] == 0.0 ? (raw == 0.0 ? 1.0 : INFINITY) : raw / t.column_max[i];
      row += fmt(" l=%g:%.3g%s", t.lambdas[i], ratio, ok ? "" : "*");
    }
    detail += row;
  }
  detail = fmt("%d/%d columns within x3 using R (2R/r normalisation: %d/%d); ratio ours/reference, * = outside:",
               pass_raw, columns, pass_scaled, columns) +
           detail;
  return {pass_raw == columns, detail};
}

// Branch of smallest |a*|: the one that continues the linearised solution.
const SolutionBranch* small_branch(const std::vector<SolutionBranch>& branches) {
  const SolutionBranch* best = nullptr;
  for (const auto& b : branches) {
    if (!best || std::abs(b.root.a_star) < std::abs(best->root.a_star)) best = &b;
  }
  return best;
}

// Frozen once. The oracle's lower branches give max|phi_oracle - phi_linear| /
// lambda^2 of at most 0.002 for |lambda| <= 0.1; the truncated iterates reach
// about 0.005. The constant keeps a factor of ten over the latter.
constexpr double kLinearConstant = 0.05;

Outcome linear_regime() {
  double worst_c = 0.0;
  for (auto bc : {BoundaryKind::NavierOne, BoundaryKind::NavierTwo, BoundaryKind::Dirichlet}) {
    for (double l : {-0.1, -0.05, -0.01, 0.01, 0.05, 0.1}) {
      const auto branches = solve(l, bc);
      const auto* b = small_branch(branches);
      if (!b) return {false, fmt("%s lambda=%g: no branch", name(bc), l)};
      const Profile lin = linear_approximation(bc, l);
      double dev = 0.0;
      for (int k = 0; k <= 100; ++k) dev = std::max(dev, std::abs(b->iterate.phi(k / 100.0) - evaluate(lin.phi, k / 100.0)));
      worst_c = std::max(worst_c, dev / (l * l));
    }
  }
  // Linearised iteration from a quartic start: error in the r^4 coefficient shrinks by 3 per step.
  const double lambda = 1.0;
  RPoly w = RPoly{0.0, 0.0, 0.7, -0.4, 2.0};
  double lo_ratio = INFINITY;
  double hi_ratio = 0.0;
  double prev = std::abs(w.coeff(4) - lambda / 16.0);
  for (int n = 1; n <= 12; ++n) {
    w = vim_step(w, lambda, DefectModel::Linear);
    const double err = std::abs(w.coeff(4) - lambda / 16.0);
    lo_ratio = std::min(lo_ratio, prev / err);
    hi_ratio = std::max(hi_ratio, prev / err);
    prev = err;
  }
  const bool ok = worst_c <= kLinearConstant && kLinearConstant <= 0.1 && lo_ratio >= 2.7 && hi_ratio <= 3.3;
  return {ok, fmt("max|phi_vim - phi_lin|/lambda^2 = %.4f (C = %.2f); linear error ratios in [%.6f, %.6f]",
                  worst_c, kLinearConstant, lo_ratio, hi_ratio)};
}

Outcome cross_method() {
  bool ok = true;
  double worst_a = 0.0;
  double worst_phi = 0.0;
  std::string detail;
  for (auto bc : {BoundaryKind::NavierOne, BoundaryKind::NavierTwo, BoundaryKind::Dirichlet}) {
    for (double l : {-10.0, -1.0, 0.0, 1.0, 5.0}) {
      const auto branches = solve(l, bc);
      const auto oracle = oracle_branches(l, bc);
      for (const auto& b : branches) {
        if (oracle.empty()) {
          ok = false;
          detail += fmt("%s lambda=%g: oracle found nothing; ", name(bc), l);
          continue;
        }
        const double near = *std::min_element(oracle.begin(), oracle.end(), [&](double x, double y) {
          return std::abs(x - b.root.a_star) < std::abs(y - b.root.a_star);
        });
        const double da = std::abs(near - b.root.a_star);
        const auto traj = ivp_trajectory(near, l);
        const auto phi = traj.phi();
        double dphi = 0.0;
        for (int k = 0; k <= 100; ++k) dphi = std::max(dphi, std::abs(traj.phi_at(phi, k / 100.0) - b.iterate.phi(k / 100.0)));
        worst_a = std::max(worst_a, da);
        worst_phi = std::max(worst_phi, dphi);
        if (da > 5e-2 || dphi > 5e-2) {
          ok = false;
          detail += fmt("%s lambda=%g %s: da=%.3g dphi=%.3g; ", name(bc), l, to_string(b.root.label).data(), da, dphi);
        }
      }
    }
  }
  // Step halving on the nontrivial NavierOne branch at lambda = 0. The series
  // handoff sits well above the step size: with r0 comparable to h the error
  // committed next to the singular point dominates and masks the scheme's order.
  const double a = solve(0.0, BoundaryKind::NavierOne).front().root.a_star;
  double w[3];
  for (int i = 0; i < 3; ++i) {
    IvpConfig cfg;
    cfg.r0 = 1e-2;
    cfg.h = 1e-3 / (1 << i);
    w[i] = ivp_integrate(a, 0.0, cfg).w;
  }
  const double order = std::log2(std::abs(w[0] - w[1]) / std::abs(w[1] - w[2]));
  ok = ok && order >= 3.8;
  return {ok, fmt("max |a_vim - a_rk4| = %.3g, max profile deviation = %.3g (tol 5e-2); RK4 order %.3f (>= 3.8) %s",
                  worst_a, worst_phi, order, detail.c_str())};
}

Outcome structural_invariants() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ua(-120.0, 20.0);
  std::uniform_real_distribution<double> ul(-200.0, 200.0);
  std::uniform_int_distribution<int> un(1, 7);
  int bad = 0;
  int raised = 0;
  for (int i = 0; i < 200; ++i) {
    try {
      for (const auto& w : iterate_history({ul(rng), ua(rng), un(rng)})) {
        if (!w.vanishes_to_second_order()) ++bad;
      }
    } catch (const NonIntegrableDefect&) {
      ++raised;
    }
  }
  return {bad == 0 && raised == 0, fmt("200 runs: %d iterates with r^0/r^1 terms, %d NonIntegrableDefect", bad, raised)};
}

Outcome gap_monotonicity() {
  auto gaps = [](const std::vector<double>& lambdas) {
    std::vector<double> g;
    for (const auto& rec : sweep(lambdas, BoundaryKind::NavierOne)) g.push_back(branch_gap(rec));
    return g;
  };
  const auto up = gaps({0, 15, 20, 31});
  const auto down = gaps({-1, -40, -60, -100});
  const bool dec = std::is_sorted(up.rbegin(), up.rend()) && std::adjacent_find(up.begin(), up.end()) == up.end();
  const bool inc = std::is_sorted(down.begin(), down.end()) && std::adjacent_find(down.begin(), down.end()) == down.end();
  return {dec && inc, fmt("gaps lambda=0,15,20,31: %.4f %.4f %.4f %.4f; lambda=-1,-40,-60,-100: %.4f %.4f %.4f %.4f",
                          up[0], up[1], up[2], up[3], down[0], down[1], down[2], down[3])};
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--only") only = std::atoi(argv[i + 1]);
  }
  struct Criterion {
    int id;
    const char* title;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "symbolic reproduction of w1, w2", 1, symbolic_reproduction},
      {2, "kernel vs adaptive quadrature", 1, kernel_correctness},
      {3, "multiplier stationarity", 1, multiplier_stationarity},
      {4, "trivial-solution exactness", 1, trivial_exactness},
      {5, "critical lambda", 60, critical_reproduction},
      {6, "branch-count phenomenology", 30, branch_counts},
      {7, "residual magnitudes within x3", 60, residual_magnitudes},
      {8, "linear regime", 10, linear_regime},
      {9, "cross-method validation", 120, cross_method},
      {10, "structural invariants", 30, structural_invariants},
      {11, "gap monotonicity", 20, gap_monotonicity},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("%s criterion %2d (%s): %s [%.2fs, budget %.0fs%s]\n", pass ? "PASS" : "FAIL", c.id, c.title,
                o.detail.c_str(), secs, c.budget_s, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
