#include "finrank/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "finrank/errors.hpp"
#include "finrank/oracle.hpp"
#include "finrank/spectrum.hpp"

namespace finrank {

namespace {

constexpr double kPathAnnotationTol = 1e-8;
constexpr double kLambdaKeyTol = 1e-12;

using CaseKey = std::tuple<double, int, int, int>;  // lambda, P, N, R

CaseKey key_of(const ResultRow& row) {
  return {row.lambda, row.power, row.n_rank, row.r_rank};
}

bool same_key(const CaseKey& a, const CaseKey& b) {
  return std::abs(std::get<0>(a) - std::get<0>(b)) < kLambdaKeyTol &&
         std::get<1>(a) == std::get<1>(b) && std::get<2>(a) == std::get<2>(b) &&
         std::get<3>(a) == std::get<3>(b);
}

SolverConfig solver_config_for(const RunConfig& config, const Case& c) {
  SolverConfig solver;
  solver.n_rank = c.n_rank;
  solver.r_rank = c.r_rank;
  solver.window = config.window;
  solver.root_tol = config.root_tol;
  solver.pole_exclusion = config.pole_exclusion;
  solver.scan_points_per_interval = config.scan_points_per_interval;
  return solver;
}

std::string format_double(const char* fmt, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), fmt, value);
  return buffer;
}

// Short stable rendering for lambda values such as 0.01 and 1.
std::string format_lambda(double value) { return format_double("%g", value); }

}  // namespace

void RunConfig::validate() const {
  if (cases.empty()) {
    throw std::invalid_argument("cases: at least one case is required");
  }
  for (const Case& c : cases) {
    PotentialSpec spec{c.power, c.lambda};
    spec.validate();
    SolverConfig solver;
    solver.n_rank = c.n_rank;
    solver.r_rank = c.r_rank;
    solver.window = window;
    solver.root_tol = root_tol;
    solver.pole_exclusion = pole_exclusion;
    solver.scan_points_per_interval = scan_points_per_interval;
    solver.validate();
  }
  if (jobs < 1) {
    throw std::invalid_argument("jobs: worker count must be at least 1");
  }
  if (!(compare_tol > 0)) {
    throw std::invalid_argument("compare_tol: must be positive");
  }
  if (max_mismatch_fraction < 0 || max_mismatch_fraction > 1) {
    throw std::invalid_argument("max_mismatch_fraction: must lie in [0, 1]");
  }
  if (grid) {
    if (!(grid->rho_max > 0)) {
      throw std::invalid_argument("grid.rho_max: must be positive");
    }
    if (grid->points < 1) {
      throw std::invalid_argument("grid.points: must be at least 1");
    }
    if (std::abs(grid->cos_theta) > 1) {
      throw std::invalid_argument("grid.cos_theta: must lie in [-1, 1]");
    }
  }
}

std::vector<Case> default_sweep() {
  std::vector<Case> cases;
  const std::pair<int, int> columns[] = {{4, 4}, {4, 8}, {4, 12},
                                         {8, 8}, {8, 12}, {12, 12}};
  for (int power : {3, 4}) {
    for (double lambda : {0.01, 0.1, 1.0}) {
      for (auto [n, r] : columns) {
        cases.push_back(Case{lambda, power, n, r});
      }
    }
  }
  return cases;
}

std::vector<ResultRow> run_cases(const RunConfig& config) {
  config.validate();
  std::vector<std::vector<ResultRow>> per_case(config.cases.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    for (;;) {
      std::size_t index = next.fetch_add(1);
      if (index >= config.cases.size()) return;
      const Case& c = config.cases[index];
      try {
        PotentialSpec spec{c.power, c.lambda};
        SpectrumResult spectrum = solve_spectrum(solver_config_for(config, c), spec);
        std::vector<ResultRow>& rows = per_case[index];
        rows.reserve(spectrum.roots.size());
        int i = 0;
        for (const Root& root : spectrum.roots) {
          ResultRow row;
          row.lambda = c.lambda;
          row.power = c.power;
          row.n_rank = c.n_rank;
          row.r_rank = c.r_rank;
          row.index = ++i;
          row.energy = root.energy;
          row.scan_energy = root.scan_energy;
          row.sector_l = root.sector_l;
          row.residual = root.residual;
          row.near_degenerate = root.near_degenerate;
          rows.push_back(row);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  int workers = std::min<int>(config.jobs, static_cast<int>(config.cases.size()));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int t = 0; t < workers; ++t) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<ResultRow> rows;  // cases in input order, roots ascending
  for (const auto& case_rows : per_case) {
    rows.insert(rows.end(), case_rows.begin(), case_rows.end());
  }
  return rows;
}

CompareReport compare(const std::vector<ResultRow>& results,
                      const FixtureTable& fixture, double tol,
                      double max_mismatch_fraction) {
  CompareReport report;
  report.tolerance = tol;
  report.max_mismatch_fraction = max_mismatch_fraction;

  bool paths_agree_on_mismatches = true;
  for (const FixtureRow& frow : fixture.rows) {
    const ResultRow* match = nullptr;
    for (const ResultRow& row : results) {
      if (same_key(key_of(row),
                   CaseKey{frow.lambda, frow.power, frow.n_rank, frow.r_rank}) &&
          row.index == frow.index) {
        match = &row;
        break;
      }
    }
    if (!match) {
      report.missing.push_back(frow);
      continue;
    }
    ++report.compared;
    if (std::abs(match->energy - frow.energy) > tol) {
      Mismatch mismatch;
      mismatch.fixture = frow;
      mismatch.computed = match->energy;
      mismatch.scan_value = match->scan_energy;
      if (std::abs(match->energy - match->scan_energy) > kPathAnnotationTol) {
        paths_agree_on_mismatches = false;
      }
      report.mismatches.push_back(mismatch);
    }
  }

  // computed roots past the fixture's last row for that key are informational
  for (const ResultRow& row : results) {
    bool key_in_fixture = false;
    int fixture_rows_for_key = 0;
    for (const FixtureRow& frow : fixture.rows) {
      if (same_key(key_of(row),
                   CaseKey{frow.lambda, frow.power, frow.n_rank, frow.r_rank})) {
        key_in_fixture = true;
        fixture_rows_for_key = std::max(fixture_rows_for_key, frow.index);
      }
    }
    if (key_in_fixture && row.index > fixture_rows_for_key) {
      report.extra.push_back(row);
    }
  }

  report.pass = report.missing.empty() && paths_agree_on_mismatches &&
                report.mismatch_fraction() <= max_mismatch_fraction;
  return report;
}

namespace {

FixtureTable load_fixture_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open fixture file " + path.string());
  }
  FixtureTable table;
  std::string line;
  bool header = true;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::istringstream row(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (fields.size() != 6) {
      throw std::invalid_argument("fixture " + path.string() + " line " +
                                  std::to_string(line_number) +
                                  ": expected 6 comma-separated fields");
    }
    FixtureRow frow;
    try {
      frow.lambda = std::stod(fields[0]);
      frow.power = std::stoi(fields[1]);
      frow.n_rank = std::stoi(fields[2]);
      frow.r_rank = std::stoi(fields[3]);
      frow.index = std::stoi(fields[4]);
      frow.energy = std::stod(fields[5]);
    } catch (const std::exception&) {
      throw std::invalid_argument("fixture " + path.string() + " line " +
                                  std::to_string(line_number) + ": parse error");
    }
    table.rows.push_back(frow);
  }
  return table;
}

}  // namespace

FixtureTable load_fixtures(const std::string& path) {
  namespace fs = std::filesystem;
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.path().extension() == ".csv") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
      throw std::invalid_argument("no .csv fixtures found in " + path);
    }
    FixtureTable table;
    for (const auto& file : files) {
      FixtureTable part = load_fixture_file(file);
      table.rows.insert(table.rows.end(), part.rows.begin(), part.rows.end());
    }
    return table;
  }
  return load_fixture_file(path);
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "lambda,P,N,R,i,E,sector_l,residual\n";
  for (const ResultRow& row : rows) {
    out << format_lambda(row.lambda) << ',' << row.power << ',' << row.n_rank << ','
        << row.r_rank << ',' << row.index << ',' << format_double("%.6f", row.energy)
        << ',' << row.sector_l << ',' << format_double("%.3e", row.residual) << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<ResultRow>& rows) {
  nlohmann::json results = nlohmann::json::array();
  for (const ResultRow& row : rows) {
    results.push_back({{"lambda", row.lambda},
                       {"P", row.power},
                       {"N", row.n_rank},
                       {"R", row.r_rank},
                       {"i", row.index},
                       {"E", row.energy},
                       {"E_scan", row.scan_energy},
                       {"sector_l", row.sector_l},
                       {"residual", row.residual},
                       {"near_degenerate", row.near_degenerate}});
  }
  out << nlohmann::json{{"results", results}}.dump(2) << '\n';
}

std::vector<ResultRow> read_results_json(std::istream& in) {
  nlohmann::json doc = nlohmann::json::parse(in);
  std::vector<ResultRow> rows;
  for (const auto& item : doc.at("results")) {
    ResultRow row;
    row.lambda = item.at("lambda").get<double>();
    row.power = item.at("P").get<int>();
    row.n_rank = item.at("N").get<int>();
    row.r_rank = item.at("R").get<int>();
    row.index = item.at("i").get<int>();
    row.energy = item.at("E").get<double>();
    row.scan_energy = item.at("E_scan").get<double>();
    row.sector_l = item.at("sector_l").get<int>();
    row.residual = item.at("residual").get<double>();
    row.near_degenerate = item.value("near_degenerate", false);
    rows.push_back(row);
  }
  return rows;
}

void write_compare_report(std::ostream& out, const CompareReport& report) {
  out << "compared " << report.compared << " rows: " << report.mismatches.size()
      << " mismatched (" << format_double("%.2f", 100.0 * report.mismatch_fraction())
      << "% vs allowed " << format_double("%.2f", 100.0 * report.max_mismatch_fraction)
      << "%), " << report.missing.size() << " missing, " << report.extra.size()
      << " extra computed roots\n";
  for (const Mismatch& mismatch : report.mismatches) {
    const FixtureRow& f = mismatch.fixture;
    out << "MISMATCH lambda=" << format_lambda(f.lambda) << " P=" << f.power
        << " N=" << f.n_rank << " R=" << f.r_rank << " i=" << f.index
        << ": computed E=" << format_double("%.6f", mismatch.computed)
        << " (scan path " << format_double("%.6f", mismatch.scan_value)
        << ", paths differ by "
        << format_double("%.2e", std::abs(mismatch.computed - mismatch.scan_value))
        << ") vs reference " << format_double("%.3f", f.energy) << " (off by "
        << format_double("%.2e", std::abs(mismatch.computed - f.energy)) << ")\n";
  }
  for (const FixtureRow& f : report.missing) {
    out << "MISSING lambda=" << format_lambda(f.lambda) << " P=" << f.power
        << " N=" << f.n_rank << " R=" << f.r_rank << " i=" << f.index
        << ": no computed root for this reference row\n";
  }
  for (const ResultRow& row : report.extra) {
    out << "EXTRA lambda=" << format_lambda(row.lambda) << " P=" << row.power
        << " N=" << row.n_rank << " R=" << row.r_rank << " i=" << row.index
        << ": computed E=" << format_double("%.6f", row.energy)
        << " has no reference row\n";
  }
  out << "comparison: " << (report.pass ? "PASS" : "FAIL") << '\n';
}

namespace {

struct StateBundle {
  ResultRow row;
  std::vector<double> b;
  StateExpansion truncated;
  StateExpansion full;
  double coefficient_distance = 0;  // full vs zero-padded truncated, in R-space
};

std::vector<StateBundle> compute_states(const RunConfig& config, const Case& c) {
  PotentialSpec spec{c.power, c.lambda};
  SolverConfig solver = solver_config_for(config, c);
  Assembly assembly = assemble(solver, spec);
  SpectrumResult spectrum = solve_spectrum(solver, spec);

  std::vector<StateBundle> bundles;
  int i = 0;
  for (const Root& root : spectrum.roots) {
    StateBundle bundle;
    bundle.row.lambda = c.lambda;
    bundle.row.power = c.power;
    bundle.row.n_rank = c.n_rank;
    bundle.row.r_rank = c.r_rank;
    bundle.row.index = ++i;
    bundle.row.energy = root.energy;
    bundle.row.scan_energy = root.scan_energy;
    bundle.row.sector_l = root.sector_l;
    bundle.row.residual = root.residual;
    bundle.row.near_degenerate = root.near_degenerate;

    Eigen::VectorXd b = amplitudes(root.energy, assembly, solver);
    bundle.b.assign(b.data(), b.data() + b.size());
    bundle.truncated = reconstruct_truncated(root.energy, b, assembly);
    bundle.full = reconstruct_full(root.energy, b, assembly);

    double distance = 0;
    for (const auto& [ordinal, coefficient] : bundle.full.coefficients) {
      auto it = bundle.truncated.coefficients.find(ordinal);
      double truncated_value = (it == bundle.truncated.coefficients.end()) ? 0.0 : it->second;
      distance += (coefficient - truncated_value) * (coefficient - truncated_value);
    }
    bundle.coefficient_distance = std::sqrt(distance);
    bundles.push_back(std::move(bundle));
  }
  return bundles;
}

nlohmann::json expansion_to_json(const StateExpansion& expansion) {
  nlohmann::json ordinals = nlohmann::json::array();
  nlohmann::json coefficients = nlohmann::json::array();
  for (const auto& [ordinal, coefficient] : expansion.coefficients) {
    ordinals.push_back(ordinal);
    coefficients.push_back(coefficient);
  }
  return {{"ordinals", ordinals}, {"coefficients", coefficients}};
}

}  // namespace

void write_states_json(std::ostream& out, const RunConfig& config) {
  nlohmann::json cases = nlohmann::json::array();
  for (const Case& c : config.cases) {
    nlohmann::json states = nlohmann::json::array();
    for (const StateBundle& bundle : compute_states(config, c)) {
      nlohmann::json state = {{"i", bundle.row.index},
                              {"E", bundle.row.energy},
                              {"sector_l", bundle.row.sector_l},
                              {"residual", bundle.row.residual},
                              {"amplitudes", bundle.b},
                              {"truncated", expansion_to_json(bundle.truncated)},
                              {"full", expansion_to_json(bundle.full)},
                              {"full_vs_truncated_distance", bundle.coefficient_distance}};
      if (config.grid) {
        nlohmann::json samples = nlohmann::json::array();
        for (int g = 0; g < config.grid->points; ++g) {
          double rho = config.grid->points == 1
                           ? 0.0
                           : config.grid->rho_max * g / (config.grid->points - 1);
          samples.push_back({{"rho", rho},
                             {"cos_theta", config.grid->cos_theta},
                             {"psi_truncated",
                              evaluate_psi(bundle.truncated, rho, config.grid->cos_theta)},
                             {"psi_full",
                              evaluate_psi(bundle.full, rho, config.grid->cos_theta)}});
        }
        state["samples"] = samples;
      }
      states.push_back(state);
    }
    cases.push_back({{"lambda", c.lambda},
                     {"P", c.power},
                     {"N", c.n_rank},
                     {"R", c.r_rank},
                     {"states", states}});
  }
  out << nlohmann::json{{"cases", cases}}.dump(2) << '\n';
}

void write_states_csv(std::ostream& out, const RunConfig& config) {
  out << "lambda,P,N,R,i,E,sector_l,form,ordinal,k,l,coefficient\n";
  for (const Case& c : config.cases) {
    BasisTable table = build_basis_table(c.r_rank);
    for (const StateBundle& bundle : compute_states(config, c)) {
      auto emit = [&](const StateExpansion& expansion, const char* form) {
        for (const auto& [ordinal, coefficient] : expansion.coefficients) {
          const QuantumNumbers& qn = table.state(ordinal);
          out << format_lambda(c.lambda) << ',' << c.power << ',' << c.n_rank << ','
              << c.r_rank << ',' << bundle.row.index << ','
              << format_double("%.6f", bundle.row.energy) << ','
              << bundle.row.sector_l << ',' << form << ',' << ordinal << ',' << qn.k
              << ',' << qn.l << ',' << format_double("%.12e", coefficient) << '\n';
        }
      };
      emit(bundle.truncated, "truncated");
      emit(bundle.full, "full");
    }
  }
}

void write_state_samples_csv(std::ostream& out, const RunConfig& config) {
  if (!config.grid) {
    throw std::invalid_argument("grid: a sample grid is required for sample output");
  }
  out << "lambda,P,N,R,i,rho,cos_theta,psi_truncated,psi_full\n";
  for (const Case& c : config.cases) {
    for (const StateBundle& bundle : compute_states(config, c)) {
      for (int g = 0; g < config.grid->points; ++g) {
        double rho = config.grid->points == 1
                         ? 0.0
                         : config.grid->rho_max * g / (config.grid->points - 1);
        out << format_lambda(c.lambda) << ',' << c.power << ',' << c.n_rank << ','
            << c.r_rank << ',' << bundle.row.index << ','
            << format_double("%.6f", rho) << ','
            << format_double("%.6f", config.grid->cos_theta) << ','
            << format_double("%.12e",
                             evaluate_psi(bundle.truncated, rho, config.grid->cos_theta))
            << ','
            << format_double("%.12e",
                             evaluate_psi(bundle.full, rho, config.grid->cos_theta))
            << '\n';
      }
    }
  }
}

namespace {

int run_verify(const RunConfig& config, std::ostream& out) {
  bool all_pass = true;
  auto print = [&](const OracleReport& report, const std::string& label) {
    out << "verify " << report.method << ' ' << label << ": max deviation "
        << format_double("%.3e", report.max_abs_deviation) << " (tolerance "
        << format_double("%.0e", report.tolerance) << ") "
        << (report.pass() ? "PASS" : "FAIL") << '\n';
    all_pass = all_pass && report.pass();
  };

  std::vector<int> powers;
  for (const Case& c : config.cases) {
    if (std::find(powers.begin(), powers.end(), c.power) == powers.end()) {
      powers.push_back(c.power);
    }
  }
  for (int power : powers) {
    print(quadrature_report(6, 5, power), "P=" + std::to_string(power));
  }

  for (const Case& c : config.cases) {
    PotentialSpec spec{c.power, c.lambda};
    SolverConfig solver = solver_config_for(config, c);
    std::string label = "lambda=" + format_lambda(c.lambda) +
                        " P=" + std::to_string(c.power) +
                        " N=" + std::to_string(c.n_rank) +
                        " R=" + std::to_string(c.r_rank);
    if (c.n_rank == c.r_rank) {
      print(galerkin_report(solver, spec), label);
    } else {
      // dual-path agreement is enforced inside every solve
      solve_spectrum(solver, spec);
      out << "verify dual-path " << label << ": PASS\n";
    }
    if (std::abs(c.lambda - 0.01) < kLambdaKeyTol) {
      print(pt1_report(solver, spec), label);
    }
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    err << "configuration error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (config.verify) {
      return run_verify(config, out);
    }

    std::ofstream file;
    std::ostream* sink = &out;
    if (!config.out_path.empty()) {
      file.open(config.out_path);
      if (!file) {
        err << "configuration error: out: cannot open " << config.out_path << '\n';
        return 2;
      }
      sink = &file;
    }

    if (config.emit_states) {
      if (config.format == OutputFormat::json) {
        write_states_json(*sink, config);
      } else {
        write_states_csv(*sink, config);
        if (config.grid) {
          std::string samples_path = config.out_path.empty()
                                         ? std::string()
                                         : config.out_path + ".samples.csv";
          if (samples_path.empty()) {
            write_state_samples_csv(out, config);
          } else {
            std::ofstream samples(samples_path);
            write_state_samples_csv(samples, config);
          }
        }
      }
      return 0;
    }

    std::vector<ResultRow> rows = run_cases(config);
    if (config.format == OutputFormat::json) {
      write_json(*sink, rows);
    } else {
      write_csv(*sink, rows);
    }

    if (!config.fixture_path.empty()) {
      FixtureTable fixture = load_fixtures(config.fixture_path);
      CompareReport report =
          compare(rows, fixture, config.compare_tol, config.max_mismatch_fraction);
      write_compare_report(out, report);
      if (!report.pass) return 4;
    }
    return 0;
  } catch (const PathDisagreementError& e) {
    err << "solver path disagreement: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

RunConfig load_run_config_json(std::istream& in) {
  nlohmann::json doc = nlohmann::json::parse(in);
  RunConfig config;
  const char* known[] = {"cases",       "window",       "root_tol",
                         "pole_exclusion", "scan_points_per_interval",
                         "format",      "out",          "fixtures",
                         "verify",      "emit_states",  "grid",
                         "jobs",        "compare_tol",  "max_mismatch_fraction"};
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) {
          return key == k;
        }) == std::end(known)) {
      throw std::invalid_argument("config: unknown field '" + key + "'");
    }
  }
  if (doc.contains("cases")) {
    for (const auto& item : doc.at("cases")) {
      Case c;
      c.lambda = item.at("lambda").get<double>();
      c.power = item.at("power").get<int>();
      c.n_rank = item.at("n_rank").get<int>();
      c.r_rank = item.at("r_rank").get<int>();
      config.cases.push_back(c);
    }
  }
  if (doc.contains("window")) {
    auto w = doc.at("window");
    config.window = std::make_pair(w.at(0).get<double>(), w.at(1).get<double>());
  }
  if (doc.contains("root_tol")) config.root_tol = doc.at("root_tol").get<double>();
  if (doc.contains("pole_exclusion")) {
    config.pole_exclusion = doc.at("pole_exclusion").get<double>();
  }
  if (doc.contains("scan_points_per_interval")) {
    config.scan_points_per_interval = doc.at("scan_points_per_interval").get<int>();
  }
  if (doc.contains("format")) {
    std::string format = doc.at("format").get<std::string>();
    if (format == "csv") {
      config.format = OutputFormat::csv;
    } else if (format == "json") {
      config.format = OutputFormat::json;
    } else {
      throw std::invalid_argument("format: must be 'csv' or 'json'");
    }
  }
  if (doc.contains("out")) config.out_path = doc.at("out").get<std::string>();
  if (doc.contains("fixtures")) {
    config.fixture_path = doc.at("fixtures").get<std::string>();
  }
  if (doc.contains("verify")) config.verify = doc.at("verify").get<bool>();
  if (doc.contains("emit_states")) {
    config.emit_states = doc.at("emit_states").get<bool>();
  }
  if (doc.contains("grid")) {
    SampleGrid grid;
    auto g = doc.at("grid");
    if (g.contains("rho_max")) grid.rho_max = g.at("rho_max").get<double>();
    if (g.contains("points")) grid.points = g.at("points").get<int>();
    if (g.contains("cos_theta")) grid.cos_theta = g.at("cos_theta").get<double>();
    config.grid = grid;
  }
  if (doc.contains("jobs")) config.jobs = doc.at("jobs").get<int>();
  if (doc.contains("compare_tol")) {
    config.compare_tol = doc.at("compare_tol").get<double>();
  }
  if (doc.contains("max_mismatch_fraction")) {
    config.max_mismatch_fraction = doc.at("max_mismatch_fraction").get<double>();
  }
  return config;
}

}  // namespace finrank
