#pragma once

#include <string>
#include <vector>

#include "finrank/potential.hpp"
#include "finrank/solver.hpp"

namespace finrank {

// Outcome of one verification computation.
struct OracleReport {
  std::string method;              // "galerkin", "pt1" or "quadrature"
  std::vector<double> reference;   // oracle values
  std::vector<double> computed;    // values under test
  double max_abs_deviation = 0;
  double tolerance = 0;

  bool pass() const { return max_abs_deviation <= tolerance; }
};

struct JacobiEigenResult {
  std::vector<double> values;   // ascending
  Eigen::MatrixXd vectors;      // column i pairs with values[i]
};

// Cyclic Jacobi rotations. Kept deliberately separate from the production
// eigensolver so the Galerkin cross-check shares no factorization code with
// the path it verifies.
JacobiEigenResult jacobi_eigensolve(const Eigen::MatrixXd& symmetric);

// Eigenvalues of diag(eps_n) + D over the first `size` basis states, sorted
// ascending. Equals the R = N spectrum of the finite-rank scheme.
std::vector<double> galerkin_diagonalize(int size, const PotentialSpec& spec);

// eps(qn) + lambda * <rho^P> in the state qn.
double first_order_pt(const QuantumNumbers& qn, const PotentialSpec& spec);

// Report builders used by tests and the CLI verify mode.
OracleReport galerkin_report(const SolverConfig& config, const PotentialSpec& spec);
OracleReport pt1_report(const SolverConfig& config, const PotentialSpec& spec);
OracleReport quadrature_report(int k_max, int l_max, int power);

}  // namespace finrank
