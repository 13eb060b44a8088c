#include <cmath>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "finrank/errors.hpp"
#include "finrank/oracle.hpp"
#include "finrank/solver.hpp"

using namespace finrank;

namespace {

SolverConfig make_config(int n, int r) {
  SolverConfig config;
  config.n_rank = n;
  config.r_rank = r;
  return config;
}

}  // namespace

TEST_CASE("solver config validation") {
  CHECK_NOTHROW(make_config(4, 8).validate());
  CHECK_THROWS_AS(make_config(0, 4).validate(), std::invalid_argument);
  SUBCASE("R below N is rejected with the rule in the message") {
    try {
      make_config(8, 4).validate();
      FAIL("expected a validation error");
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find("R >= N") != std::string::npos);
    }
  }
  SUBCASE("inverted window is rejected") {
    SolverConfig config = make_config(4, 4);
    config.window = {5.0, 1.0};
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  }
}

TEST_CASE("sector partition matches the table ordering") {
  SUBCASE("N=4, R=8") {
    std::vector<Sector> sectors = partition_sectors(4, 8);
    REQUIRE(sectors.size() == 5);
    CHECK(sectors[0].l == 0);
    CHECK(sectors[0].n_ordinals == std::vector<int>{1, 4});
    CHECK(sectors[0].r_ordinals == std::vector<int>{1, 4});
    CHECK(sectors[1].l == 1);
    CHECK(sectors[1].n_ordinals == std::vector<int>{2});
    CHECK(sectors[1].r_ordinals == std::vector<int>{2, 6});
    CHECK(sectors[2].l == 2);
    CHECK(sectors[2].n_ordinals == std::vector<int>{3});
    CHECK(sectors[2].r_ordinals == std::vector<int>{3, 8});
    CHECK(sectors[3].l == 3);
    CHECK(sectors[3].inert());
    CHECK(sectors[3].r_ordinals == std::vector<int>{5});
    CHECK(sectors[4].l == 4);
    CHECK(sectors[4].inert());
    CHECK(sectors[4].r_ordinals == std::vector<int>{7});
  }
  SUBCASE("N=R=1") {
    std::vector<Sector> sectors = partition_sectors(1, 1);
    REQUIRE(sectors.size() == 1);
    CHECK(sectors[0].l == 0);
    CHECK_FALSE(sectors[0].inert());
  }
  SUBCASE("N=R=12 has six sectors, none inert") {
    std::vector<Sector> sectors = partition_sectors(12, 12);
    REQUIRE(sectors.size() == 6);
    std::vector<std::size_t> sizes;
    for (const Sector& sector : sectors) {
      CHECK_FALSE(sector.inert());
      sizes.push_back(sector.r_ordinals.size());
    }
    CHECK(sizes == std::vector<std::size_t>{3, 3, 2, 2, 1, 1});
  }
}

TEST_CASE("A(E) closed forms") {
  SUBCASE("rank-1 value") {
    Eigen::MatrixXd a = build_A(0.0, make_config(1, 1), PotentialSpec{4, 1.0});
    REQUIRE(a.rows() == 1);
    CHECK(a(0, 0) == doctest::Approx(2.25).epsilon(1e-14));
  }
  SUBCASE("A approaches the identity far below the spectrum") {
    Eigen::MatrixXd a = build_A(-1e9, make_config(4, 8), PotentialSpec{3, 1.0});
    CHECK((a - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-6);
  }
  SUBCASE("A is block diagonal under grouping by l") {
    BasisTable table = build_basis_table(4);
    Eigen::MatrixXd a = build_A(1.23, make_config(4, 8), PotentialSpec{4, 0.1});
    for (int p = 1; p <= 4; ++p) {
      for (int n = 1; n <= 4; ++n) {
        if (table.state(p).l != table.state(n).l) {
          CHECK(std::abs(a(p - 1, n - 1)) < 1e-15);
        }
      }
    }
  }
  SUBCASE("pole proximity is signalled") {
    CHECK_THROWS_AS(build_A(3.0 + 1e-9, make_config(4, 8), PotentialSpec{4, 0.1}),
                    PoleProximityError);
  }
  SUBCASE("R = N reduces to the Bubnov-Galerkin form") {
    SolverConfig config = make_config(8, 8);
    PotentialSpec spec{3, 0.1};
    Assembly assembly = assemble(config, spec);
    for (double energy : {0.4, 6.1, 25.0}) {
      Eigen::MatrixXd a = build_A(energy, assembly, config);
      for (int p = 1; p <= 8; ++p) {
        for (int n = 1; n <= 8; ++n) {
          double expected = (p == n ? 1.0 : 0.0) +
                            assembly.v_nr(p - 1, n - 1) /
                                (assembly.eps(n - 1) - energy);
          CHECK(a(p - 1, n - 1) == doctest::Approx(expected).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("determinant of A") {
  SUBCASE("rank-1 root") {
    CHECK(std::abs(det_A(6.75, make_config(1, 1), PotentialSpec{4, 1.0})) < 1e-12);
    CHECK(det_A(-1e9, make_config(1, 1), PotentialSpec{4, 1.0}) ==
          doctest::Approx(1.0).epsilon(1e-6));
  }
  SUBCASE("sign change brackets the perturbed ground state") {
    SolverConfig config = make_config(4, 4);
    PotentialSpec spec{3, 0.01};
    CHECK(det_A(3.0 + 1e-3, config, spec) * det_A(3.05, config, spec) < 0);
  }
  SUBCASE("block-determinant identity at random energies") {
    SolverConfig config = make_config(8, 12);
    PotentialSpec spec{4, 0.1};
    Assembly assembly = assemble(config, spec);
    std::mt19937 rng(987654);
    std::uniform_real_distribution<double> dist(-5.0, 40.0);
    int tested = 0;
    while (tested < 100) {
      double energy = dist(rng);
      bool near_pole = false;
      for (int r = 0; r < assembly.eps.size(); ++r) {
        if (std::abs(energy - assembly.eps(r)) < 1e-3) near_pole = true;
      }
      if (near_pole) continue;
      ++tested;
      double full = det_A(energy, assembly, config);
      double product = 1.0;
      Eigen::MatrixXd a = build_A(energy, assembly, config);
      for (const Sector& sector : assembly.sectors) {
        if (sector.inert()) continue;
        Eigen::MatrixXd block(sector.n_ordinals.size(), sector.n_ordinals.size());
        for (std::size_t i = 0; i < sector.n_ordinals.size(); ++i) {
          for (std::size_t j = 0; j < sector.n_ordinals.size(); ++j) {
            block(i, j) = a(sector.n_ordinals[i] - 1, sector.n_ordinals[j] - 1);
          }
        }
        product *= block.determinant();
      }
      CHECK(full == doctest::Approx(product).epsilon(1e-10));
    }
  }
}

TEST_CASE("reduced matrix") {
  SUBCASE("rank-1 value") {
    SolverConfig config = make_config(1, 1);
    PotentialSpec spec{4, 1.0};
    Assembly assembly = assemble(config, spec);
    Eigen::MatrixXd m = reduced_matrix(assembly.sectors[0], assembly);
    REQUIRE(m.rows() == 1);
    CHECK(m(0, 0) == doctest::Approx(6.75).epsilon(1e-14));
  }
  SUBCASE("R = N gives diag(eps) + D on each sector") {
    SolverConfig config = make_config(12, 12);
    PotentialSpec spec{3, 1.0};
    Assembly assembly = assemble(config, spec);
    for (const Sector& sector : assembly.sectors) {
      Eigen::MatrixXd m = reduced_matrix(sector, assembly);
      for (std::size_t i = 0; i < sector.r_ordinals.size(); ++i) {
        for (std::size_t j = 0; j < sector.r_ordinals.size(); ++j) {
          double expected = assembly.d(sector.r_ordinals[i] - 1, sector.r_ordinals[j] - 1);
          if (i == j) expected += assembly.eps(sector.r_ordinals[i] - 1);
          CHECK(m(i, j) == doctest::Approx(expected).epsilon(1e-12));
        }
      }
    }
  }
  SUBCASE("inert sectors are rejected") {
    SolverConfig config = make_config(4, 8);
    PotentialSpec spec{4, 1.0};
    Assembly assembly = assemble(config, spec);
    CHECK(assembly.sectors[3].inert());
    CHECK_THROWS_AS(reduced_matrix(assembly.sectors[3], assembly),
                    std::invalid_argument);
  }
}

TEST_CASE("solve_spectrum reproduces published and closed-form values") {
  SUBCASE("lambda=0.01, P=3, N=R=4") {
    SpectrumResult result = solve_spectrum(make_config(4, 4), PotentialSpec{3, 0.01});
    REQUIRE(result.roots.size() == 4);
    const double expected[] = {3.022, 5.045, 7.072, 7.079};
    for (int i = 0; i < 4; ++i) {
      CHECK(std::abs(result.roots[i].energy - expected[i]) < 5e-4);
    }
    CHECK(result.roots[0].sector_l == 0);
    CHECK(result.roots[1].sector_l == 1);
  }
  SUBCASE("lambda=1, P=4, N=R=4 ground state") {
    SpectrumResult result = solve_spectrum(make_config(4, 4), PotentialSpec{4, 1.0});
    CHECK(std::abs(result.roots[0].energy - 4.947) < 5e-4);
  }
  SUBCASE("rank-1 closed form") {
    SpectrumResult result = solve_spectrum(make_config(1, 1), PotentialSpec{4, 0.01});
    REQUIRE(result.roots.size() == 1);
    CHECK(result.roots[0].energy == doctest::Approx(3.0375).epsilon(1e-10));
  }
  SUBCASE("root counts follow the non-inert sector sizes") {
    CHECK(solve_spectrum(make_config(4, 8), PotentialSpec{3, 0.01}).roots.size() == 6);
    CHECK(solve_spectrum(make_config(8, 12), PotentialSpec{4, 1.0}).roots.size() == 11);
    CHECK(solve_spectrum(make_config(12, 12), PotentialSpec{3, 1.0}).roots.size() == 12);
  }
  SUBCASE("roots are sorted and carry both path values") {
    SpectrumResult result = solve_spectrum(make_config(8, 12), PotentialSpec{3, 1.0});
    for (std::size_t i = 0; i < result.roots.size(); ++i) {
      if (i > 0) CHECK(result.roots[i].energy >= result.roots[i - 1].energy);
      CHECK(std::abs(result.roots[i].energy - result.roots[i].scan_energy) <= 1e-8);
    }
  }
}

TEST_CASE("Galerkin equivalence against the independent oracle") {
  for (int n = 1; n <= 12; ++n) {
    for (int power : {3, 4}) {
      for (double lambda : {0.01, 0.1, 1.0}) {
        SpectrumResult result =
            solve_spectrum(make_config(n, n), PotentialSpec{power, lambda});
        std::vector<double> reference =
            galerkin_diagonalize(n, PotentialSpec{power, lambda});
        REQUIRE(result.roots.size() == reference.size());
        for (std::size_t i = 0; i < reference.size(); ++i) {
          CHECK(std::abs(result.roots[i].energy - reference[i]) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("every level rises with the coupling") {
  for (int power : {3, 4}) {
    SpectrumResult weak = solve_spectrum(make_config(8, 8), PotentialSpec{power, 0.01});
    SpectrumResult mid = solve_spectrum(make_config(8, 8), PotentialSpec{power, 0.1});
    SpectrumResult strong = solve_spectrum(make_config(8, 8), PotentialSpec{power, 1.0});
    for (std::size_t i = 0; i < weak.roots.size(); ++i) {
      CHECK(weak.roots[i].energy < mid.roots[i].energy);
      CHECK(mid.roots[i].energy < strong.roots[i].energy);
    }
  }
}

TEST_CASE("variational monotonicity of the Galerkin levels") {
  SpectrumResult coarse = solve_spectrum(make_config(4, 4), PotentialSpec{3, 1.0});
  SpectrumResult fine = solve_spectrum(make_config(12, 12), PotentialSpec{3, 1.0});
  for (std::size_t i = 0; i < coarse.roots.size(); ++i) {
    CHECK(fine.roots[i].energy <= coarse.roots[i].energy);
  }
  CHECK(std::abs(coarse.roots[0].energy - 4.521) < 5e-4);
  CHECK(std::abs(fine.roots[0].energy - 4.446) < 5e-4);
}

TEST_CASE("a user window restricts the reported roots") {
  SolverConfig config = make_config(8, 8);
  config.window = {{4.0, 8.0}};
  SpectrumResult result = solve_spectrum(config, PotentialSpec{3, 0.01});
  CHECK(result.roots.size() == 3);  // 5.045, 7.071, 7.079
  for (const Root& root : result.roots) {
    CHECK(root.energy > 4.0);
    CHECK(root.energy < 8.0);
  }
}

TEST_CASE("nearly degenerate cross-sector roots are flagged, not merged") {
  // at vanishing coupling the eps = 7 shell splits by ~3 lambda between the
  // l = 2 and l = 0 sectors; at lambda = 1e-10 the two roots are ~3e-10 apart
  SolverConfig config = make_config(4, 4);
  config.pole_exclusion = 1e-13;
  SpectrumResult result = solve_spectrum(config, PotentialSpec{4, 1e-10});
  REQUIRE(result.roots.size() == 4);
  CHECK_FALSE(result.roots[0].near_degenerate);
  CHECK_FALSE(result.roots[1].near_degenerate);
  CHECK(result.roots[2].near_degenerate);
  CHECK(result.roots[3].near_degenerate);
  CHECK(result.roots[2].sector_l == 2);
  CHECK(result.roots[3].sector_l == 0);
  CHECK(result.roots[3].energy > result.roots[2].energy);
}

TEST_CASE("assembly reports a sane condition estimate for D") {
  Assembly assembly = assemble(make_config(12, 12), PotentialSpec{4, 1.0});
  CHECK(assembly.d_condition > 1.0);
  CHECK(assembly.d_condition < 1e4);
}
