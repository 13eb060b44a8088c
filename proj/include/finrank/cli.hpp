#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "finrank/potential.hpp"
#include "finrank/solver.hpp"

namespace finrank {

struct Case {
  double lambda = 1.0;
  int power = 4;
  int n_rank = 4;
  int r_rank = 4;
};

enum class OutputFormat { csv, json };

struct SampleGrid {
  double rho_max = 5.0;
  int points = 51;
  double cos_theta = 1.0;
};

struct RunConfig {
  std::vector<Case> cases;
  std::optional<std::pair<double, double>> window;
  double root_tol = 1e-10;
  double pole_exclusion = 1e-6;
  int scan_points_per_interval = 64;
  OutputFormat format = OutputFormat::csv;
  std::string out_path;       // empty writes to stdout
  std::string fixture_path;   // non-empty triggers comparison after the run
  bool verify = false;
  bool emit_states = false;
  std::optional<SampleGrid> grid;
  int jobs = 1;
  double compare_tol = 1.5e-3;
  double max_mismatch_fraction = 0.05;

  void validate() const;  // throws std::invalid_argument naming the field
};

// One emitted energy row; the CSV schema is the fixed subset
// lambda,P,N,R,i,E,sector_l,residual.
struct ResultRow {
  double lambda = 0;
  int power = 0;
  int n_rank = 0;
  int r_rank = 0;
  int index = 0;  // 1-based, roots ascending
  double energy = 0;
  double scan_energy = 0;
  int sector_l = 0;
  double residual = 0;
  bool near_degenerate = false;
};

struct FixtureRow {
  double lambda = 0;
  int power = 0;
  int n_rank = 0;
  int r_rank = 0;
  int index = 0;
  double energy = 0;  // reference value, 3 decimals
};

struct FixtureTable {
  std::vector<FixtureRow> rows;
};

struct Mismatch {
  FixtureRow fixture;
  double computed = 0;
  double scan_value = 0;  // annotation: the two solver paths must agree
};

struct CompareReport {
  int compared = 0;
  std::vector<Mismatch> mismatches;
  std::vector<FixtureRow> missing;   // fixture keys with no computed row
  std::vector<ResultRow> extra;      // informational: roots beyond the fixture
  double tolerance = 0;
  double max_mismatch_fraction = 0;
  bool pass = false;

  double mismatch_fraction() const {
    return compared == 0 ? 0.0 : static_cast<double>(mismatches.size()) / compared;
  }
};

// The sweep reproducing the published tables: lambda in {0.01, 0.1, 1} x
// P in {3, 4} x (N, R) in {(4,4),(4,8),(4,12),(8,8),(8,12),(12,12)}.
std::vector<Case> default_sweep();

std::vector<ResultRow> run_cases(const RunConfig& config);

CompareReport compare(const std::vector<ResultRow>& results,
                      const FixtureTable& fixture, double tol,
                      double max_mismatch_fraction);

FixtureTable load_fixtures(const std::string& path);  // file or directory

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_json(std::ostream& out, const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_results_json(std::istream& in);

void write_compare_report(std::ostream& out, const CompareReport& report);

void write_states_csv(std::ostream& out, const RunConfig& config);
void write_states_json(std::ostream& out, const RunConfig& config);
void write_state_samples_csv(std::ostream& out, const RunConfig& config);

// Exit statuses: 0 ok, 1 verification failure, 2 invalid configuration,
// 3 solver path disagreement, 4 fixture comparison failure.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

RunConfig load_run_config_json(std::istream& in);

}  // namespace finrank
