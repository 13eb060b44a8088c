#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "finrank/cli.hpp"

namespace {

std::optional<std::pair<double, double>> parse_window(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw CLI::ValidationError("window", "expected the form lo:hi");
  }
  try {
    return std::make_pair(std::stod(text.substr(0, colon)),
                          std::stod(text.substr(colon + 1)));
  } catch (const std::exception&) {
    throw CLI::ValidationError("window", "expected the form lo:hi");
  }
}

finrank::SampleGrid parse_grid(const std::string& text) {
  finrank::SampleGrid grid;
  std::istringstream in(text);
  std::string field;
  std::vector<std::string> fields;
  while (std::getline(in, field, ':')) fields.push_back(field);
  if (fields.size() < 2 || fields.size() > 3) {
    throw CLI::ValidationError("grid", "expected rho_max:points[:cos_theta]");
  }
  try {
    grid.rho_max = std::stod(fields[0]);
    grid.points = std::stoi(fields[1]);
    if (fields.size() == 3) grid.cos_theta = std::stod(fields[2]);
  } catch (const std::exception&) {
    throw CLI::ValidationError("grid", "expected rho_max:points[:cos_theta]");
  }
  return grid;
}

struct CommonFlags {
  std::string config_path;
  double lambda = 0;
  int power = 0;
  int n_rank = 0;
  int r_rank = 0;
  std::string window;
  double tol = 0;
  std::string format;
  std::string out;
  std::string fixtures;
  std::string grid;
  int jobs = 0;
  int scan_points = 0;
  double pole_exclusion = 0;
};

void add_case_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--lambda", flags.lambda, "dimensionless coupling (> 0)");
  cmd->add_option("--power", flags.power, "anharmonicity exponent P (3 or 4)");
  cmd->add_option("--n-rank", flags.n_rank, "potential rank N");
  cmd->add_option("--r-rank", flags.r_rank, "Green's-function rank R (>= N)");
}

void add_solver_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--window", flags.window, "energy search window lo:hi");
  cmd->add_option("--tol", flags.tol, "absolute root tolerance");
  cmd->add_option("--scan-points", flags.scan_points,
                  "grid points per inter-pole interval");
  cmd->add_option("--pole-exclusion", flags.pole_exclusion,
                  "half-width excluded around each pole");
}

void add_output_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--format", flags.format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", flags.out, "output path (default: stdout)");
}

// Flags override values read from --config.
finrank::RunConfig make_config(const CommonFlags& flags, bool single_case,
                               bool default_to_sweep) {
  finrank::RunConfig config;
  if (!flags.config_path.empty()) {
    std::ifstream in(flags.config_path);
    if (!in) {
      throw std::invalid_argument("config: cannot open " + flags.config_path);
    }
    config = finrank::load_run_config_json(in);
  }
  if (single_case) {
    finrank::Case c;
    c.lambda = flags.lambda;
    c.power = flags.power;
    c.n_rank = flags.n_rank;
    c.r_rank = flags.r_rank;
    config.cases = {c};
  } else if (config.cases.empty() && default_to_sweep) {
    config.cases = finrank::default_sweep();
  }
  if (!flags.window.empty()) config.window = parse_window(flags.window);
  if (flags.tol > 0) config.root_tol = flags.tol;
  if (flags.scan_points > 0) config.scan_points_per_interval = flags.scan_points;
  if (flags.pole_exclusion > 0) config.pole_exclusion = flags.pole_exclusion;
  if (!flags.format.empty()) {
    config.format = flags.format == "json" ? finrank::OutputFormat::json
                                           : finrank::OutputFormat::csv;
  }
  if (!flags.out.empty()) config.out_path = flags.out;
  if (!flags.fixtures.empty()) config.fixture_path = flags.fixtures;
  if (!flags.grid.empty()) config.grid = parse_grid(flags.grid);
  if (flags.jobs > 0) config.jobs = flags.jobs;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-rank bound-state solver for the 3D anharmonic oscillator"};
  app.require_subcommand(1);

  CommonFlags solve_flags, sweep_flags, states_flags, verify_flags;
  std::string compare_results, compare_fixtures;
  double compare_tol = 1.5e-3;
  double compare_max_mismatch = 0.05;

  CLI::App* solve = app.add_subcommand("solve", "solve one (lambda, P, N, R) case");
  solve->add_option("--config", solve_flags.config_path, "JSON run configuration");
  add_case_flags(solve, solve_flags);
  add_solver_flags(solve, solve_flags);
  add_output_flags(solve, solve_flags);
  solve->get_option("--lambda")->required();
  solve->get_option("--power")->required();
  solve->get_option("--n-rank")->required();
  solve->get_option("--r-rank")->required();

  CLI::App* sweep = app.add_subcommand(
      "sweep", "run a case list (default: the published-table sweep)");
  sweep->add_option("--config", sweep_flags.config_path, "JSON run configuration");
  add_solver_flags(sweep, sweep_flags);
  add_output_flags(sweep, sweep_flags);
  sweep->add_option("--fixtures", sweep_flags.fixtures,
                    "fixture CSV file or directory to compare against");
  sweep->add_option("--jobs", sweep_flags.jobs, "parallel worker count");

  CLI::App* cmp = app.add_subcommand("compare",
                                     "compare a results JSON against fixtures");
  cmp->add_option("--results", compare_results, "results JSON path")->required();
  cmp->add_option("--fixtures", compare_fixtures, "fixture CSV file or directory")
      ->required();
  cmp->add_option("--tol", compare_tol, "per-row tolerance");
  cmp->add_option("--max-mismatch", compare_max_mismatch,
                  "largest acceptable mismatch fraction");

  CLI::App* verify = app.add_subcommand(
      "verify", "run the oracle verification suite over a case list");
  verify->add_option("--config", verify_flags.config_path, "JSON run configuration");
  verify->add_option("--jobs", verify_flags.jobs, "parallel worker count");

  CLI::App* states = app.add_subcommand(
      "states", "emit amplitudes and eigenstate expansions for one case");
  states->add_option("--config", states_flags.config_path, "JSON run configuration");
  add_case_flags(states, states_flags);
  add_solver_flags(states, states_flags);
  add_output_flags(states, states_flags);
  states->add_option("--grid", states_flags.grid,
                     "wavefunction sample grid rho_max:points[:cos_theta]");
  states->get_option("--lambda")->required();
  states->get_option("--power")->required();
  states->get_option("--n-rank")->required();
  states->get_option("--r-rank")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    finrank::RunConfig config;
    if (solve->parsed()) {
      config = make_config(solve_flags, true, false);
    } else if (sweep->parsed()) {
      config = make_config(sweep_flags, false, true);
    } else if (verify->parsed()) {
      config = make_config(verify_flags, false, true);
      config.verify = true;
    } else if (states->parsed()) {
      config = make_config(states_flags, true, false);
      config.emit_states = true;
    } else if (cmp->parsed()) {
      std::ifstream in(compare_results);
      if (!in) {
        std::cerr << "configuration error: results: cannot open " << compare_results
                  << '\n';
        return 2;
      }
      std::vector<finrank::ResultRow> rows = finrank::read_results_json(in);
      finrank::FixtureTable fixture = finrank::load_fixtures(compare_fixtures);
      finrank::CompareReport report =
          finrank::compare(rows, fixture, compare_tol, compare_max_mismatch);
      finrank::write_compare_report(std::cout, report);
      return report.pass ? 0 : 4;
    }
    return finrank::run(config, std::cout, std::cerr);
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
