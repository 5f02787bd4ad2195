#include "epibvp/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "epibvp/critical.hpp"
#include "epibvp/error.hpp"
#include "epibvp/oracle.hpp"
#include "epibvp/recover.hpp"

namespace epibvp {

using Json = nlohmann::ordered_json;

std::vector<double> config_lambdas(const RunConfig& cfg) {
  if (cfg.lambda) return {*cfg.lambda};
  if (!cfg.lambda_list.empty()) return cfg.lambda_list;
  if (cfg.lambda_range) {
    const auto& r = *cfg.lambda_range;
    if (!(r.step > 0.0) || r.hi < r.lo) throw DomainError("lambda range needs lo <= hi and step > 0");
    const auto count = static_cast<long>(std::floor((r.hi - r.lo) / r.step + 1e-9)) + 1;
    std::vector<double> out;
    for (long i = 0; i < count; ++i) out.push_back(r.lo + static_cast<double>(i) * r.step);
    return out;
  }
  return {};
}

ShootingOptions shooting_options(const RunConfig& cfg) {
  ShootingOptions o;
  o.a_lo = cfg.a_lo;
  o.a_hi = cfg.a_hi;
  o.grid_points = cfg.a_grid_points;
  o.n_iter = cfg.n_iter;
  o.jobs = cfg.jobs;
  return o;
}

std::string config_json(const RunConfig& cfg) {
  Json j;
  j["command"] = cfg.command;
  j["bc"] = std::string(to_string(cfg.bc));
  j["lambdas"] = config_lambdas(cfg);
  j["n_iter"] = cfg.n_iter.value_or(default_iterations(cfg.bc));
  j["a_window"] = {cfg.a_lo, cfg.a_hi};
  j["a_grid_points"] = cfg.a_grid_points;
  j["grid_step"] = cfg.grid_step;
  j["format"] = cfg.format == OutputFormat::Csv ? "csv" : "json";
  j["tol"] = cfg.tol ? Json(*cfg.tol) : Json(nullptr);
  j["lo"] = cfg.lo ? Json(*cfg.lo) : Json(nullptr);
  j["hi"] = cfg.hi ? Json(*cfg.hi) : Json(nullptr);
  j["branch"] = cfg.branch ? Json(std::string(to_string(*cfg.branch))) : Json(nullptr);
  j["residual_form"] = cfg.residual_form == ResidualForm::Raw ? "raw" : "scaled";
  return j.dump(2) + "\n";
}

namespace {

void echo_config(const RunConfig& cfg) {
  std::filesystem::create_directories(cfg.output_dir);
  std::ofstream(cfg.output_dir / "config.json", std::ios::binary) << config_json(cfg);
}

std::vector<double> r_grid(double step) {
  const auto n = static_cast<long>(std::llround(1.0 / step));
  std::vector<double> g;
  if (std::abs(n * step - 1.0) < 1e-9) {
    for (long i = 0; i <= n; ++i) g.push_back(static_cast<double>(i) / n);
  } else {
    for (double r = 0.0; r < 1.0; r += step) g.push_back(r);
    g.push_back(1.0);
  }
  return g;
}

std::string lambda_tag(double lambda) { return "lambda_" + format_double(lambda); }

int require_lambdas(const std::vector<double>& lambdas, std::ostream& err) {
  if (lambdas.empty()) {
    err << "error: one of --lambda, --lambdas or --lambda-range is required\n";
    return exit_code::kUsage;
  }
  return exit_code::kOk;
}

}  // namespace

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto lambdas = config_lambdas(cfg);
  if (int rc = require_lambdas(lambdas, err)) return rc;
  echo_config(cfg);
  const auto opts = shooting_options(cfg);
  const auto grid = r_grid(cfg.grid_step);

  Table summary{{"bc", "lambda", "label", "a_star", "boundary_residual", "sup_norm_phi", "phi_half",
                 "fold", "sign_definite"},
                {}};
  std::size_t total = 0;
  for (double lambda : lambdas) {
    const auto branches = solve(lambda, cfg.bc, opts);
    total += branches.size();
    for (std::size_t i = 0; i < branches.size(); ++i) {
      const auto& b = branches[i];
      Table profile{{"r", "w", "phi", "residual"}, {}};
      for (double r : grid) {
        profile.rows.push_back({r, b.iterate.w(r), b.iterate.phi(r), b.iterate.residual(r)});
      }
      std::string label(to_string(b.root.label));
      if (b.root.label == BranchLabel::Unlabeled) label += "_" + std::to_string(i);
      write_table(cfg.output_dir,
                  "profile_" + std::string(to_string(cfg.bc)) + "_" + lambda_tag(lambda) + "_" + label,
                  profile, cfg.format);
      summary.rows.push_back({std::string(to_string(cfg.bc)), lambda, label, b.root.a_star,
                              b.root.residual, b.phi_sup_norm, b.iterate.phi(0.5), b.root.fold,
                              b.sign_definite});
    }
    if (branches.empty()) {
      summary.rows.push_back({std::string(to_string(cfg.bc)), lambda, std::string("none"),
                              std::monostate{}, std::monostate{}, std::monostate{}, std::monostate{},
                              false, std::monostate{}});
    }
  }
  write_table(cfg.output_dir, "summary", summary, cfg.format);
  write_csv(out, summary);
  if (total == 0) {
    err << "no solution branches in the a-window\n";
    return exit_code::kNoSolution;
  }
  return exit_code::kOk;
}

int cmd_residual_table(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto lambdas = config_lambdas(cfg);
  if (int rc = require_lambdas(lambdas, err)) return rc;
  echo_config(cfg);
  const auto opts = shooting_options(cfg);
  const auto grid = default_residual_grid();

  // label -> lambda index -> column
  std::map<BranchLabel, std::map<std::size_t, std::vector<double>>> columns;
  for (std::size_t li = 0; li < lambdas.size(); ++li) {
    for (const auto& b : solve(lambdas[li], cfg.bc, opts)) {
      if (cfg.branch && b.root.label != *cfg.branch) continue;
      columns[b.root.label][li] = branch_residual_table(b, grid, cfg.residual_form).values;
    }
  }
  if (cfg.branch && !columns.count(*cfg.branch)) columns[*cfg.branch];
  if (columns.empty()) {
    err << "no solution branches for any requested lambda\n";
    return exit_code::kNoSolution;
  }
  bool any = false;
  for (const auto& [label, cols] : columns) {
    Table t;
    t.header.push_back("r");
    for (double l : lambdas) t.header.push_back(lambda_tag(l));
    for (std::size_t k = 0; k < grid.size(); ++k) {
      std::vector<Cell> row{grid[k]};
      for (std::size_t li = 0; li < lambdas.size(); ++li) {
        const auto it = cols.find(li);
        row.push_back(it == cols.end() ? Cell{} : Cell{it->second[k]});
      }
      t.rows.push_back(std::move(row));
    }
    any = any || !cols.empty();
    write_table(cfg.output_dir,
                "residual_" + std::string(to_string(cfg.bc)) + "_" + std::string(to_string(label)), t,
                cfg.format);
    out << "# " << to_string(cfg.bc) << ' ' << to_string(label) << '\n';
    write_csv(out, t);
  }
  return any ? exit_code::kOk : exit_code::kNoSolution;
}

int cmd_critical(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.lo || !cfg.hi) {
    err << "error: critical needs --lo and --hi\n";
    return exit_code::kUsage;
  }
  const double tol = cfg.tol.value_or(0.01);
  CriticalSensitivity s;
  try {
    s = critical_with_sensitivity(cfg.bc, *cfg.lo, *cfg.hi, tol, shooting_options(cfg));
  } catch (const InvalidBracket& e) {
    err << "invalid bracket: " << e.what() << '\n';
    return exit_code::kInvalidBracket;
  }
  Json j;
  j["bc"] = std::string(to_string(cfg.bc));
  j["lambda_crit"] = s.base.lambda_crit;
  j["bracket"] = {s.base.bracket_lo, s.base.bracket_hi};
  j["n_iter"] = s.base.n_iter_used;
  Json sens = Json::array();
  for (const auto& e : s.neighbours) {
    sens.push_back({{"n_iter", e.n_iter_used},
                    {"lambda_crit", e.lambda_crit},
                    {"delta", e.lambda_crit - s.base.lambda_crit}});
  }
  j["sensitivity"] = sens;
  const std::string text = j.dump(2) + "\n";
  out << text;
  echo_config(cfg);
  std::ofstream(cfg.output_dir / "critical.json", std::ios::binary) << text;
  return exit_code::kOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto lambdas = config_lambdas(cfg);
  if (int rc = require_lambdas(lambdas, err)) return rc;
  echo_config(cfg);
  const auto records = sweep(lambdas, cfg.bc, shooting_options(cfg));

  Table t{{"bc", "lambda", "branch_count", "fold", "gap", "label", "a_star", "sup_norm_phi"}, {}};
  Table fig;
  fig.header.push_back("r");
  std::vector<const SweepRecord*> fig_cols;
  std::vector<std::size_t> fig_idx;
  for (const auto& rec : records) {
    Cell gap;
    if (rec.branch_count == 2) gap = branch_gap(rec);
    if (rec.branches.empty()) {
      t.rows.push_back({std::string(to_string(cfg.bc)), rec.lambda, 0LL, rec.fold_flag, gap,
                        std::string("none"), Cell{}, Cell{}});
    }
    for (std::size_t i = 0; i < rec.branches.size(); ++i) {
      const auto& b = rec.branches[i];
      t.rows.push_back({std::string(to_string(cfg.bc)), rec.lambda,
                        static_cast<long long>(rec.branch_count), rec.fold_flag, gap,
                        std::string(to_string(b.label)), b.a_star, b.sup_norm_phi});
      fig.header.push_back("phi_" + lambda_tag(rec.lambda) + "_" + std::string(to_string(b.label)));
      fig_cols.push_back(&rec);
      fig_idx.push_back(i);
    }
  }
  for (double r : r_grid(cfg.grid_step)) {
    std::vector<Cell> row{r};
    for (std::size_t c = 0; c < fig_cols.size(); ++c) row.push_back(fig_cols[c]->profiles[fig_idx[c]].phi(r));
    fig.rows.push_back(std::move(row));
  }
  write_table(cfg.output_dir, "sweep_" + std::string(to_string(cfg.bc)), t, cfg.format);
  write_table(cfg.output_dir, "profiles_" + std::string(to_string(cfg.bc)), fig, cfg.format);
  write_csv(out, t);
  return exit_code::kOk;
}

int cmd_linear(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto lambdas = config_lambdas(cfg);
  if (int rc = require_lambdas(lambdas, err)) return rc;
  echo_config(cfg);
  for (double lambda : lambdas) {
    const Profile p = linear_approximation(cfg.bc, lambda);
    Table samples{{"r", "w", "phi"}, {}};
    for (double r : r_grid(cfg.grid_step)) samples.rows.push_back({r, evaluate(p.w, r), evaluate(p.phi, r)});
    Table coeffs{{"power", "w", "phi"}, {}};
    for (long long k = 0; k <= 4; ++k) {
      coeffs.rows.push_back({k, p.w.coeff(static_cast<std::size_t>(k)), p.phi.coeff(static_cast<std::size_t>(k))});
    }
    const std::string stem = "linear_" + std::string(to_string(cfg.bc)) + "_" + lambda_tag(lambda);
    write_table(cfg.output_dir, stem, samples, cfg.format);
    write_table(cfg.output_dir, stem + "_coefficients", coeffs, cfg.format);
    out << "# " << stem << '\n';
    write_csv(out, coeffs);
  }
  return exit_code::kOk;
}

int cmd_oracle_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto lambdas = config_lambdas(cfg);
  if (int rc = require_lambdas(lambdas, err)) return rc;
  echo_config(cfg);
  const double tol = cfg.tol.value_or(5e-2);
  const auto opts = shooting_options(cfg);
  OracleOptions oopts;
  oopts.a_lo = cfg.a_lo;
  oopts.a_hi = cfg.a_hi;

  Table t{{"bc", "lambda", "label", "a_vim", "a_oracle", "root_deviation", "profile_deviation", "ok"}, {}};
  bool all_ok = true;
  for (double lambda : lambdas) {
    const auto branches = solve(lambda, cfg.bc, opts);
    const auto oracle_roots = oracle_branches(lambda, cfg.bc, oopts);
    if (branches.empty() != oracle_roots.empty()) all_ok = false;
    if (branches.empty()) {
      t.rows.push_back({std::string(to_string(cfg.bc)), lambda, std::string("none"), Cell{},
                        oracle_roots.empty() ? Cell{} : Cell{oracle_roots.front()}, Cell{}, Cell{},
                        oracle_roots.empty()});
    }
    for (const auto& b : branches) {
      Cell a_oracle;
      Cell root_dev;
      Cell prof_dev;
      bool ok = false;
      if (!oracle_roots.empty()) {
        const double nearest = *std::min_element(oracle_roots.begin(), oracle_roots.end(), [&](double x, double y) {
          return std::abs(x - b.root.a_star) < std::abs(y - b.root.a_star);
        });
        a_oracle = nearest;
        const double dev = std::abs(nearest - b.root.a_star);
        root_dev = dev;
        try {
          const auto traj = ivp_trajectory(nearest, lambda, oopts.ivp);
          const auto phi = traj.phi();
          double pd = 0.0;
          for (int k = 0; k <= 100; ++k) {
            const double r = k / 100.0;
            pd = std::max(pd, std::abs(traj.phi_at(phi, r) - b.iterate.phi(r)));
          }
          prof_dev = pd;
          ok = dev <= tol && pd <= tol;
        } catch (const IvpOverflow&) {
          ok = false;
        }
      }
      all_ok = all_ok && ok;
      t.rows.push_back({std::string(to_string(cfg.bc)), lambda, std::string(to_string(b.root.label)),
                        b.root.a_star, a_oracle, root_dev, prof_dev, ok});
    }
  }
  write_table(cfg.output_dir, "oracle_check_" + std::string(to_string(cfg.bc)), t, cfg.format);
  write_csv(out, t);
  return all_ok ? exit_code::kOk : exit_code::kOracleMismatch;
}

namespace {

std::vector<double> parse_colon(const std::string& s, std::size_t parts, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError(flag, "not a number: " + item);
    }
  }
  if (out.size() != parts) throw CLI::ValidationError(flag, "expected " + std::to_string(parts) + " colon-separated numbers");
  return out;
}

struct RawOptions {
  std::string bc = "navier1";
  std::optional<double> lambda;
  std::vector<double> lambdas;
  std::string lambda_range;
  std::optional<int> n_iter;
  std::string a_window = "-120:20";
  int a_grid_points = 4000;
  double grid_step = 0.01;
  std::string out;
  std::string format = "csv";
  int jobs = 0;
  std::optional<double> tol;
  std::optional<double> lo;
  std::optional<double> hi;
  std::string branch;
  std::string residual_form = "raw";
};

void add_common(CLI::App* sub, RawOptions& o) {
  sub->add_option("--bc", o.bc, "dirichlet | navier1 | navier2")
      ->check(CLI::IsMember({"dirichlet", "navier1", "navier2"}));
  auto* l = sub->add_option("--lambda", o.lambda, "Single lambda");
  auto* ls = sub->add_option("--lambdas", o.lambdas, "Comma-separated lambdas")->delimiter(',');
  auto* lr = sub->add_option("--lambda-range", o.lambda_range, "lo:hi:step, inclusive");
  l->excludes(ls)->excludes(lr);
  ls->excludes(lr);
  sub->add_option("--n-iter", o.n_iter, "Iteration depth (default 6 dirichlet, 7 navier)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--a-window", o.a_window, "Shooting window lo:hi");
  sub->add_option("--a-grid-points", o.a_grid_points, "Scan points in the a-window")
      ->check(CLI::Range(100, 10000000));
  sub->add_option("--grid-step", o.grid_step, "r spacing of profile output")
      ->check(CLI::Range(1e-6, 0.5));
  sub->add_option("--out", o.out, "Output directory")->envname("EPIBVP_OUT_DIR");
  sub->add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--jobs", o.jobs, "Worker threads (0 = all processors)")->check(CLI::NonNegativeNumber);
  sub->add_option("--tol", o.tol, "Tolerance");
  sub->add_option("--lo", o.lo, "Lower lambda of a critical bracket");
  sub->add_option("--hi", o.hi, "Upper lambda of a critical bracket");
  sub->add_option("--branch", o.branch, "lower | upper | positive | negative")
      ->check(CLI::IsMember({"lower", "upper", "positive", "negative"}));
  sub->add_option("--residual-form", o.residual_form, "raw (R) | scaled (2R/r)")
      ->check(CLI::IsMember({"raw", "scaled"}));
}

RunConfig to_config(const std::string& command, const RawOptions& o) {
  RunConfig cfg;
  cfg.command = command;
  cfg.bc = *parse_boundary_kind(o.bc);
  cfg.lambda = o.lambda;
  if (!o.lambdas.empty()) cfg.lambda_list = o.lambdas;
  if (!o.lambda_range.empty()) {
    const auto v = parse_colon(o.lambda_range, 3, "--lambda-range");
    cfg.lambda_range = LambdaRange{v[0], v[1], v[2]};
  }
  cfg.n_iter = o.n_iter;
  const auto w = parse_colon(o.a_window, 2, "--a-window");
  if (!(w[0] < w[1])) throw CLI::ValidationError("--a-window", "needs lo < hi");
  cfg.a_lo = w[0];
  cfg.a_hi = w[1];
  cfg.a_grid_points = o.a_grid_points;
  cfg.grid_step = o.grid_step;
  if (!o.out.empty()) cfg.output_dir = o.out;
  cfg.format = o.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
  cfg.jobs = o.jobs;
  cfg.tol = o.tol;
  if (cfg.tol && !(*cfg.tol > 0.0)) throw CLI::ValidationError("--tol", "must be positive");
  cfg.lo = o.lo;
  cfg.hi = o.hi;
  if (!o.branch.empty()) cfg.branch = parse_branch_label(o.branch);
  cfg.residual_form = o.residual_form == "scaled" ? ResidualForm::Scaled : ResidualForm::Raw;
  return cfg;
}

}  // namespace

int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Radial epitaxial-growth boundary value problem solver", "epibvp"};
  app.set_config("--config", "", "TOML/INI file with option defaults; flags take precedence");
  app.require_subcommand(1);
  RawOptions raw;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"solve", "Solve at one or more lambdas and write branch profiles"},
      {"residual-table", "Residuals on r = 0..0.9, one column per lambda"},
      {"critical", "Bisect for the critical lambda between --lo and --hi"},
      {"sweep", "Branch counts, gaps and profiles over a set of lambdas"},
      {"linear", "Closed-form linearised solution"},
      {"oracle-check", "Compare branches against the RK4 shooting oracle"},
  };
  for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help), raw);

  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  std::reverse(args.begin(), args.end());
  RunConfig cfg;
  try {
    app.parse(args);
    const auto subs = app.get_subcommands();
    cfg = to_config(subs.front()->get_name(), raw);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_code::kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kUsage;
  }

  try {
    if (cfg.command == "solve") return cmd_solve(cfg, out, err);
    if (cfg.command == "residual-table") return cmd_residual_table(cfg, out, err);
    if (cfg.command == "critical") return cmd_critical(cfg, out, err);
    if (cfg.command == "sweep") return cmd_sweep(cfg, out, err);
    if (cfg.command == "linear") return cmd_linear(cfg, out, err);
    if (cfg.command == "oracle-check") return cmd_oracle_check(cfg, out, err);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kUsage;
  }
  return exit_code::kUsage;
}

}  // namespace epibvp
