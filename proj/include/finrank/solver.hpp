#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "finrank/basis.hpp"
#include "finrank/potential.hpp"

namespace finrank {

struct SolverConfig {
  int n_rank = 4;  // N, rank of the separable potential
  int r_rank = 4;  // R, rank of the truncated Green's function; R >= N
  std::optional<std::pair<double, double>> window;  // energy search window
  double root_tol = 1e-10;        // absolute bisection tolerance
  double pole_exclusion = 1e-6;   // half-width of the band excluded around each pole
  int scan_points_per_interval = 64;

  void validate() const;  // throws std::invalid_argument
};

// Basis states sharing one orbital quantum number l. Ordinals are 1-based.
// A sector with Green's-function states but no potential-rank states is
// inert: it contributes no roots.
struct Sector {
  int l = 0;
  std::vector<int> n_ordinals;  // ordinals <= N
  std::vector<int> r_ordinals;  // ordinals <= R

  bool inert() const { return n_ordinals.empty(); }
};

struct Root {
  double energy = 0;       // reduced-eigenproblem value (production path)
  double scan_energy = 0;  // determinant-scan value (verification path)
  int sector_l = 0;
  double residual = 0;     // ||M v - E v|| of the reduced eigenproblem
  bool near_degenerate = false;  // another root closer than 1e-9
};

struct SpectrumResult {
  std::vector<Root> roots;  // ascending in energy
};

// Matrices shared by the secular solver and the state-recovery routines:
// the R-state basis, pole energies, the N x R coupling block and the N x N
// sub-block D with its inverse.
struct Assembly {
  BasisTable table;
  Eigen::VectorXd eps;    // size R
  Eigen::MatrixXd v_nr;   // N x R
  Eigen::MatrixXd d;      // N x N
  Eigen::MatrixXd d_inv;
  double d_condition = 0;
  std::vector<Sector> sectors;

  Assembly() : table(1) {}
};

Assembly assemble(const SolverConfig& config, const PotentialSpec& spec);

std::vector<Sector> partition_sectors(int n_rank, int r_rank);

// Default search window: [0, Gershgorin upper bound of diag(eps) + coupling
// plus a margin of 10]. Roots can sit far above the last pole, so a bound on
// the reduced matrix is used instead of the pole range.
std::pair<double, double> search_window(const SolverConfig& config,
                                        const Assembly& assembly);

Eigen::MatrixXd build_A(double energy, const SolverConfig& config,
                        const PotentialSpec& spec);
Eigen::MatrixXd build_A(double energy, const Assembly& assembly,
                        const SolverConfig& config);

double det_A(double energy, const SolverConfig& config, const PotentialSpec& spec);
double det_A(double energy, const Assembly& assembly, const SolverConfig& config);

// Symmetric matrix diag(eps_r) + K over the sector's r-ordinals, with
// K = V^T D^{-1} V restricted to the sector. Rejects inert sectors.
Eigen::MatrixXd reduced_matrix(const Sector& sector, const SolverConfig& config,
                               const PotentialSpec& spec);
Eigen::MatrixXd reduced_matrix(const Sector& sector, const Assembly& assembly);

// Production path: symmetric eigensolve of the reduced matrix per non-inert
// sector. Verification path: per-sector determinant scan with sign-change
// bracketing and bisection. The two paths must agree on every root to 1e-8
// or a PathDisagreementError is thrown.
SpectrumResult solve_spectrum(const SolverConfig& config, const PotentialSpec& spec);

}  // namespace finrank
