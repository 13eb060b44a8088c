#include <cstdio>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "finrank/cli.hpp"

using namespace finrank;

namespace {

RunConfig single_case_config(double lambda, int power, int n, int r) {
  RunConfig config;
  config.cases = {Case{lambda, power, n, r}};
  return config;
}

}  // namespace

TEST_CASE("run config validation names the offending field") {
  RunConfig config = single_case_config(0.01, 4, 8, 4);  // R < N
  try {
    config.validate();
    FAIL("expected a validation error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("r_rank") != std::string::npos);
    CHECK(std::string(e.what()).find("R >= N") != std::string::npos);
  }

  RunConfig empty;
  CHECK_THROWS_AS(empty.validate(), std::invalid_argument);

  RunConfig bad_lambda = single_case_config(-1.0, 4, 4, 4);
  CHECK_THROWS_AS(bad_lambda.validate(), std::invalid_argument);
}

TEST_CASE("single rank-1 case emits one row with the closed-form root") {
  std::vector<ResultRow> rows = run_cases(single_case_config(0.01, 4, 1, 1));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].index == 1);
  CHECK(rows[0].energy == doctest::Approx(3.0375).epsilon(1e-10));
  CHECK(rows[0].sector_l == 0);
}

TEST_CASE("CSV output is schema-stable and deterministic") {
  RunConfig config = single_case_config(0.01, 3, 4, 8);
  std::vector<ResultRow> rows = run_cases(config);
  std::ostringstream first, second;
  write_csv(first, rows);
  write_csv(second, run_cases(config));
  CHECK(first.str() == second.str());
  CHECK(first.str().rfind("lambda,P,N,R,i,E,sector_l,residual\n", 0) == 0);
  // E printed to 6 decimals
  std::string line = first.str().substr(first.str().find('\n') + 1);
  CHECK(line.rfind("0.01,3,4,8,1,3.022379,0,", 0) == 0);
}

TEST_CASE("parallel sweep output matches serial output") {
  RunConfig serial;
  serial.cases = {Case{0.01, 3, 4, 4}, Case{0.1, 4, 4, 8}, Case{1.0, 3, 8, 8},
                  Case{0.01, 4, 8, 12}};
  RunConfig parallel = serial;
  parallel.jobs = 4;
  std::ostringstream a, b;
  write_csv(a, run_cases(serial));
  write_csv(b, run_cases(parallel));
  CHECK(a.str() == b.str());
}

TEST_CASE("JSON round-trip preserves the comparison verdict") {
  RunConfig config;
  config.cases = {Case{0.01, 3, 4, 4}, Case{0.01, 3, 4, 8}};
  std::vector<ResultRow> rows = run_cases(config);

  FixtureTable fixture =
      load_fixtures(std::string(FINRANK_FIXTURE_DIR) + "/lambda0.01_P3.csv");
  FixtureTable subset;
  for (const FixtureRow& row : fixture.rows) {
    if ((row.n_rank == 4 && row.r_rank == 4) || (row.n_rank == 4 && row.r_rank == 8)) {
      subset.rows.push_back(row);
    }
  }
  CompareReport direct = compare(rows, subset, 1.5e-3, 0.05);

  std::stringstream buffer;
  write_json(buffer, rows);
  std::vector<ResultRow> reread = read_results_json(buffer);
  CompareReport roundtrip = compare(reread, subset, 1.5e-3, 0.05);

  CHECK(direct.pass == roundtrip.pass);
  CHECK(direct.compared == roundtrip.compared);
  CHECK(direct.mismatches.size() == roundtrip.mismatches.size());
  CHECK(direct.pass);
}

TEST_CASE("compare tolerances and failure modes") {
  ResultRow row;
  row.lambda = 0.01;
  row.power = 4;
  row.n_rank = 1;
  row.r_rank = 1;
  row.index = 1;
  row.energy = 3.0375;
  row.scan_energy = 3.0375;

  FixtureRow fixture_row;
  fixture_row.lambda = 0.01;
  fixture_row.power = 4;
  fixture_row.n_rank = 1;
  fixture_row.r_rank = 1;
  fixture_row.index = 1;
  fixture_row.energy = 3.037;

  SUBCASE("table rounding passes at the default tolerance") {
    CompareReport report = compare({row}, FixtureTable{{fixture_row}}, 1.5e-3, 0.05);
    CHECK(report.pass);
    CHECK(report.compared == 1);
    CHECK(report.mismatches.empty());
  }
  SUBCASE("a wrong column pairing is flagged") {
    ResultRow wrong = row;
    wrong.energy = 9.041;
    wrong.scan_energy = 9.041;
    FixtureRow other = fixture_row;
    other.energy = 9.102;
    CompareReport report = compare({wrong}, FixtureTable{{other}}, 1.5e-3, 0.05);
    REQUIRE(report.mismatches.size() == 1);
    CHECK_FALSE(report.pass);
    CHECK(report.mismatches[0].computed == doctest::Approx(9.041));
  }
  SUBCASE("missing keys are a structural failure") {
    FixtureRow absent = fixture_row;
    absent.n_rank = 2;
    absent.r_rank = 2;
    CompareReport report =
        compare({row}, FixtureTable{{fixture_row, absent}}, 1.5e-3, 0.05);
    CHECK_FALSE(report.pass);
    REQUIRE(report.missing.size() == 1);
    CHECK(report.missing[0].n_rank == 2);
  }
  SUBCASE("extra computed roots are informational") {
    ResultRow second = row;
    second.index = 2;
    second.energy = 7.1;
    CompareReport report =
        compare({row, second}, FixtureTable{{fixture_row}}, 1.5e-3, 0.05);
    CHECK(report.pass);
    REQUIRE(report.extra.size() == 1);
    CHECK(report.extra[0].index == 2);
  }
  SUBCASE("a mismatch with disagreeing solver paths fails the report") {
    ResultRow inconsistent = row;
    inconsistent.energy = 3.1;         // off the fixture by more than tol
    inconsistent.scan_energy = 3.0375; // and the two paths disagree
    CompareReport report =
        compare({inconsistent}, FixtureTable{{fixture_row}}, 1.5e-3, 1.0);
    CHECK_FALSE(report.pass);
  }
}

TEST_CASE("fixture loader reads the shipped tables") {
  FixtureTable all = load_fixtures(FINRANK_FIXTURE_DIR);
  CHECK(all.rows.size() == 6 * 49);
  FixtureTable one =
      load_fixtures(std::string(FINRANK_FIXTURE_DIR) + "/lambda1_P4.csv");
  CHECK(one.rows.size() == 49);
  CHECK(one.rows.back().energy == doctest::Approx(92.771));
  CHECK_THROWS_AS(load_fixtures("/nonexistent/path.csv"), std::invalid_argument);
}

TEST_CASE("run orchestrator maps failures to exit codes") {
  SUBCASE("invalid configuration returns 2") {
    RunConfig config = single_case_config(0.01, 4, 8, 4);
    std::ostringstream out, err;
    CHECK(run(config, out, err) == 2);
    CHECK(err.str().find("r_rank") != std::string::npos);
  }
  SUBCASE("clean single case returns 0 and writes CSV") {
    RunConfig config = single_case_config(0.01, 4, 1, 1);
    std::ostringstream out, err;
    CHECK(run(config, out, err) == 0);
    CHECK(out.str().find("3.037500") != std::string::npos);
  }
  SUBCASE("fixture comparison failure returns 4") {
    RunConfig config = single_case_config(0.01, 4, 1, 1);
    std::string path = "finrank_test_fixture.csv";
    {
      std::ofstream fixture(path);
      fixture << "lambda,P,N,R,i,E_paper\n0.01,4,1,1,1,9.999\n";
    }
    config.fixture_path = path;
    std::ostringstream out, err;
    CHECK(run(config, out, err) == 4);
    CHECK(out.str().find("MISMATCH") != std::string::npos);
    std::remove(path.c_str());
  }
}

TEST_CASE("states output contains both expansion forms") {
  RunConfig config = single_case_config(0.01, 4, 4, 8);
  config.emit_states = true;
  config.grid = SampleGrid{2.0, 3, 1.0};

  std::ostringstream csv;
  write_states_csv(csv, config);
  CHECK(csv.str().find(",truncated,") != std::string::npos);
  CHECK(csv.str().find(",full,") != std::string::npos);

  std::ostringstream json;
  write_states_json(json, config);
  CHECK(json.str().find("\"full_vs_truncated_distance\"") != std::string::npos);
  CHECK(json.str().find("\"samples\"") != std::string::npos);

  std::ostringstream samples;
  write_state_samples_csv(samples, config);
  CHECK(samples.str().rfind("lambda,P,N,R,i,rho,cos_theta,psi_truncated,psi_full\n",
                            0) == 0);
}

TEST_CASE("run config JSON loader") {
  std::istringstream in(R"({
    "cases": [{"lambda": 0.5, "power": 3, "n_rank": 2, "r_rank": 4}],
    "format": "json",
    "jobs": 2,
    "compare_tol": 0.002
  })");
  RunConfig config = load_run_config_json(in);
  REQUIRE(config.cases.size() == 1);
  CHECK(config.cases[0].lambda == 0.5);
  CHECK(config.cases[0].r_rank == 4);
  CHECK(config.format == OutputFormat::json);
  CHECK(config.jobs == 2);
  CHECK(config.compare_tol == 0.002);

  std::istringstream unknown(R"({"casez": []})");
  CHECK_THROWS_AS(load_run_config_json(unknown), std::invalid_argument);
}

TEST_CASE("default sweep covers the published grid") {
  std::vector<Case> sweep = default_sweep();
  CHECK(sweep.size() == 36);
  int count_1212 = 0;
  for (const Case& c : sweep) {
    CHECK((c.power == 3 || c.power == 4));
    if (c.n_rank == 12 && c.r_rank == 12) ++count_1212;
  }
  CHECK(count_1212 == 6);
}
