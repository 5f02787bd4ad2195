#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "epibvp/boundary.hpp"
#include "epibvp/csv.hpp"
#include "epibvp/shooting.hpp"

namespace epibvp {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kInvalidBracket = 2;
inline constexpr int kNoSolution = 3;
inline constexpr int kOracleMismatch = 4;
}  // namespace exit_code

struct LambdaRange {
  double lo = 0.0;
  double hi = 0.0;
  double step = 1.0;
};

struct RunConfig {
  std::string command;
  BoundaryKind bc = BoundaryKind::NavierOne;
  std::optional<double> lambda;
  std::vector<double> lambda_list;
  std::optional<LambdaRange> lambda_range;
  std::optional<int> n_iter;
  double a_lo = -120.0;
  double a_hi = 20.0;
  int a_grid_points = 4000;
  /// Spacing of the r-grid for profile output.
  double grid_step = 0.01;
  std::filesystem::path output_dir = "epibvp_out";
  OutputFormat format = OutputFormat::Csv;
  int jobs = 0;
  std::optional<double> tol;
  std::optional<double> lo;
  std::optional<double> hi;
  std::optional<BranchLabel> branch;
  ResidualForm residual_form = ResidualForm::Raw;
};

/// The lambda values a config selects, in order. Throws DomainError for a
/// malformed range.
std::vector<double> config_lambdas(const RunConfig& cfg);
ShootingOptions shooting_options(const RunConfig& cfg);
/// The effective configuration as pretty-printed JSON with a fixed key order.
std::string config_json(const RunConfig& cfg);

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_residual_table(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_critical(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_linear(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_oracle_check(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv (argv[0] is the program name) and dispatches to a command.
int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace epibvp
