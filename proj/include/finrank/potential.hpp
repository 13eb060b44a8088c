#pragma once

#include <Eigen/Dense>

#include "finrank/basis.hpp"

namespace finrank {

// Anharmonic term lambda * rho^P in units of (hbar omega / 2), rho = r / r0.
struct PotentialSpec {
  int power = 4;        // P, either 3 or 4
  double lambda = 1.0;  // dimensionless coupling, > 0

  void validate() const;  // throws std::invalid_argument
};

// Dense block of <phi_p|V|phi_q> over the Table-1 ordering, entry (p-1, q-1)
// for ordinals p, q. Entries with l_p != l_q are exact zeros.
struct CouplingMatrix {
  Eigen::MatrixXd entries;

  Eigen::Index rows() const { return entries.rows(); }
  Eigen::Index cols() const { return entries.cols(); }
};

// Radial integral int_0^inf R_{k1 l}(rho) rho^P R_{k2 l}(rho) rho^2 drho,
// evaluated in closed form as a finite double sum of Gamma ratios.
// Symmetric in (k1, k2).
double radial_moment(int k1, int k2, int l, int power);

// Same integral via generalized Gauss-Laguerre quadrature in u = rho^2, with
// enough nodes to integrate the polynomial factor exactly. point_count = 0
// picks the smallest exact rule; an explicit insufficient count throws.
double quadrature_moment(int k1, int k2, int l, int power, int point_count = 0);

// <a|V|b> = lambda * radial_moment when l_a = l_b, exactly zero otherwise.
double matrix_element(const QuantumNumbers& a, const QuantumNumbers& b,
                      const PotentialSpec& spec);

CouplingMatrix build_coupling(int rows, int cols, const PotentialSpec& spec);

}  // namespace finrank
