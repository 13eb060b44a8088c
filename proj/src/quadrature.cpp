#include "finrank/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace finrank {

template <typename Real>
QuadratureRuleT<Real> gauss_generalized_laguerre_t(int point_count, Real alpha) {
  if (point_count < 1) {
    throw std::invalid_argument("quadrature rule needs at least one point");
  }
  if (!(alpha > -1)) {
    throw std::invalid_argument("weight exponent must exceed -1");
  }
  // Golub-Welsch: nodes are eigenvalues of the Jacobi matrix of the
  // orthogonal-polynomial recurrence, weights come from the first components
  // of the eigenvectors scaled by mu_0 = Gamma(alpha + 1).
  using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  const int n = point_count;
  Matrix jacobi = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    jacobi(i, i) = 2 * i + alpha + 1;
    if (i > 0) {
      Real off = std::sqrt(i * (i + alpha));
      jacobi(i, i - 1) = off;
      jacobi(i - 1, i) = off;
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(jacobi);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("quadrature Jacobi matrix diagonalization failed");
  }
  const Real mu0 = std::exp(std::lgamma(alpha + 1));
  QuadratureRuleT<Real> rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = solver.eigenvalues()(i);
    Real first = solver.eigenvectors()(0, i);
    rule.weights[i] = mu0 * first * first;
  }
  return rule;
}

template QuadratureRuleT<double> gauss_generalized_laguerre_t(int, double);
template QuadratureRuleT<long double> gauss_generalized_laguerre_t(int, long double);

QuadratureRule gauss_generalized_laguerre(int point_count, double alpha) {
  return gauss_generalized_laguerre_t<double>(point_count, alpha);
}

}  // namespace finrank
