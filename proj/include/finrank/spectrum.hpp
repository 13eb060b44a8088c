#pragma once

#include <map>

#include "finrank/solver.hpp"

namespace finrank {

enum class ExpansionForm { truncated, full };

// Approximate eigenstate as coefficients over basis ordinals. The truncated
// form runs over n <= N, the full form over r <= R. Coefficients are
// normalized to unit norm; the largest-magnitude one is made positive.
struct StateExpansion {
  double root = 0;
  int sector_l = 0;
  ExpansionForm form = ExpansionForm::truncated;
  std::map<int, double> coefficients;  // ordinal -> coefficient
};

// Unit-norm null vector of A(E_i), from the smallest singular direction.
// Throws AmbiguousNullSpaceError when the two smallest singular values are
// not separated, and NumericalError when the root is not singular enough.
Eigen::VectorXd amplitudes(double root, const SolverConfig& config,
                           const PotentialSpec& spec);
Eigen::VectorXd amplitudes(double root, const Assembly& assembly,
                           const SolverConfig& config);

// Coefficients c_n = b_n / (eps_n - E_i) for n <= N, then normalized.
StateExpansion reconstruct_truncated(double root, const Eigen::VectorXd& b,
                                     const SolverConfig& config,
                                     const PotentialSpec& spec);
StateExpansion reconstruct_truncated(double root, const Eigen::VectorXd& b,
                                     const Assembly& assembly);

// Coefficients c_r = (1/(eps_r - E_i)) sum_{m,n} <phi_r|V|phi_m> (D^-1)_mn b_n
// for r <= R, then normalized. Coincides with the truncated form for R = N.
StateExpansion reconstruct_full(double root, const Eigen::VectorXd& b,
                                const SolverConfig& config,
                                const PotentialSpec& spec);
StateExpansion reconstruct_full(double root, const Eigen::VectorXd& b,
                                const Assembly& assembly);

// Position-space value sum_n c_n R_n(rho) sqrt((2 l_n + 1)/4 pi) P_{l_n}(x),
// with x = cos(theta).
double evaluate_psi(const StateExpansion& expansion, double rho, double cos_theta);

}  // namespace finrank
