#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "epibvp/cli.hpp"
#include "epibvp/critical.hpp"
#include "epibvp/error.hpp"
#include "epibvp/oracle.hpp"
#include "epibvp/recover.hpp"
#include "epibvp/shooting.hpp"
#include "epibvp/vim.hpp"

namespace py = pybind11;
using namespace epibvp;

namespace {

std::vector<double> coeffs(const RPoly& p) { return {p.coeffs().begin(), p.coeffs().end()}; }

ShootingOptions make_options(double a_lo, double a_hi, int grid_points, std::optional<int> n_iter, int jobs) {
  ShootingOptions o;
  o.a_lo = a_lo;
  o.a_hi = a_hi;
  o.grid_points = grid_points;
  o.n_iter = n_iter;
  o.jobs = jobs;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bindings for the epibvp C++ library";

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<NonIntegrableDefect>(m, "NonIntegrableDefect", error.ptr());
  py::register_exception<NonRecoverable>(m, "NonRecoverable", error.ptr());
  py::register_exception<DomainError>(m, "DomainError", error.ptr());
  py::register_exception<IterationBudgetExceeded>(m, "IterationBudgetExceeded", error.ptr());
  py::register_exception<AmbiguousClassification>(m, "AmbiguousClassification", error.ptr());
  py::register_exception<NotTwoBranches>(m, "NotTwoBranches", error.ptr());
  py::register_exception<InvalidBracket>(m, "InvalidBracket", error.ptr());
  py::register_exception<IvpOverflow>(m, "IvpOverflow", error.ptr());

  py::enum_<BoundaryKind>(m, "BoundaryKind")
      .value("DIRICHLET", BoundaryKind::Dirichlet)
      .value("NAVIER_ONE", BoundaryKind::NavierOne)
      .value("NAVIER_TWO", BoundaryKind::NavierTwo);

  py::enum_<BranchLabel>(m, "BranchLabel")
      .value("UNLABELED", BranchLabel::Unlabeled)
      .value("LOWER", BranchLabel::Lower)
      .value("UPPER", BranchLabel::Upper)
      .value("POSITIVE", BranchLabel::Positive)
      .value("NEGATIVE", BranchLabel::Negative);

  m.def("default_iterations", &default_iterations, py::arg("bc"));

  m.def(
      "iterate",
      [](double a, double lambda_, int n) { return coeffs(iterate({lambda_, a, n})); },
      py::arg("a"), py::arg("lam"), py::arg("n_iter"),
      "Coefficients of the n-th iterate from a r^2, lowest power first.");

  m.def(
      "symbolic_iterate",
      [](int n) {
        std::vector<std::tuple<int, int, int, double>> out;
        for (const auto& t : symbolic_iterate(n).terms()) out.emplace_back(t.a_power, t.lambda_power, t.r_power, t.coeff);
        return out;
      },
      py::arg("n"), "Terms (a_power, lambda_power, r_power, coeff) of the symbolic iterate.");

  m.def("boundary_residual", &boundary_residual, py::arg("a"), py::arg("lam"), py::arg("bc"), py::arg("n_iter"));

  py::class_<BranchRoot>(m, "BranchRoot")
      .def_readonly("a_star", &BranchRoot::a_star)
      .def_readonly("bc", &BranchRoot::bc)
      .def_readonly("lam", &BranchRoot::lambda)
      .def_readonly("label", &BranchRoot::label)
      .def_readonly("bracket_lo", &BranchRoot::bracket_lo)
      .def_readonly("bracket_hi", &BranchRoot::bracket_hi)
      .def_readonly("residual", &BranchRoot::residual)
      .def_readonly("fold", &BranchRoot::fold)
      .def("__repr__", [](const BranchRoot& r) {
        std::ostringstream os;
        os << "BranchRoot(a_star=" << r.a_star << ", label=" << to_string(r.label) << ")";
        return os.str();
      });

  m.def(
      "find_branches",
      [](double lambda_, BoundaryKind bc, double a_lo, double a_hi, int grid_points, std::optional<int> n_iter,
         int jobs) {
        py::gil_scoped_release release;
        return find_branches(lambda_, bc, make_options(a_lo, a_hi, grid_points, n_iter, jobs));
      },
      py::arg("lam"), py::arg("bc"), py::arg("a_lo") = -120.0, py::arg("a_hi") = 20.0,
      py::arg("grid_points") = 4000, py::arg("n_iter") = py::none(), py::arg("jobs") = 0);

  py::class_<SolutionBranch>(m, "SolutionBranch")
      .def_property_readonly("root", [](const SolutionBranch& b) { return b.root; })
      .def_property_readonly("a_star", [](const SolutionBranch& b) { return b.root.a_star; })
      .def_property_readonly("label", [](const SolutionBranch& b) { return b.root.label; })
      .def_readonly("phi_sup_norm", &SolutionBranch::phi_sup_norm)
      .def_readonly("sign_definite", &SolutionBranch::sign_definite)
      .def_property_readonly("residuals", [](const SolutionBranch& b) { return b.residuals.values; })
      .def("w", [](const SolutionBranch& b, double r) { return b.iterate.w(r); }, py::arg("r"))
      .def("phi", [](const SolutionBranch& b, double r) { return b.iterate.phi(r); }, py::arg("r"))
      .def("residual", [](const SolutionBranch& b, double r) { return b.iterate.residual(r); }, py::arg("r"));

  m.def(
      "solve",
      [](double lambda_, BoundaryKind bc, std::optional<int> n_iter, int jobs) {
        py::gil_scoped_release release;
        return solve(lambda_, bc, make_options(-120.0, 20.0, 4000, n_iter, jobs));
      },
      py::arg("lam"), py::arg("bc"), py::arg("n_iter") = py::none(), py::arg("jobs") = 0);

  m.def(
      "linear_approximation",
      [](BoundaryKind bc, double lambda_) {
        const Profile p = linear_approximation(bc, lambda_);
        return py::dict(py::arg("phi") = coeffs(p.phi), py::arg("w") = coeffs(p.w));
      },
      py::arg("bc"), py::arg("lam"), "Coefficients of the closed-form phi and w.");

  py::class_<CriticalEstimate>(m, "CriticalEstimate")
      .def_readonly("bc", &CriticalEstimate::bc)
      .def_readonly("lambda_crit", &CriticalEstimate::lambda_crit)
      .def_readonly("bracket_lo", &CriticalEstimate::bracket_lo)
      .def_readonly("bracket_hi", &CriticalEstimate::bracket_hi)
      .def_readonly("n_iter_used", &CriticalEstimate::n_iter_used);

  m.def(
      "find_critical_lambda",
      [](BoundaryKind bc, double lo, double hi, double tol, int jobs) {
        py::gil_scoped_release release;
        return find_critical_lambda(bc, lo, hi, tol, make_options(-120.0, 20.0, 4000, std::nullopt, jobs));
      },
      py::arg("bc"), py::arg("lo"), py::arg("hi"), py::arg("tol") = 0.01, py::arg("jobs") = 0);

  m.def(
      "oracle_branches",
      [](double lambda_, BoundaryKind bc) {
        py::gil_scoped_release release;
        return oracle_branches(lambda_, bc);
      },
      py::arg("lam"), py::arg("bc"));

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "epibvp");
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command line with the given arguments; returns (exit_code, stdout, stderr).");
}
