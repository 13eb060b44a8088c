#include "finrank/potential.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "finrank/quadrature.hpp"

namespace finrank {

void PotentialSpec::validate() const {
  if (power != 3 && power != 4) {
    throw std::invalid_argument("power: anharmonicity exponent P must be 3 or 4");
  }
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("lambda: coupling must be positive");
  }
}

namespace {

void check_moment_args(int k1, int k2, int l, int power) {
  if (k1 < 0 || k2 < 0 || l < 0) {
    throw std::invalid_argument("quantum numbers must be non-negative");
  }
  if (power != 3 && power != 4) {
    throw std::invalid_argument("anharmonicity exponent P must be 3 or 4");
  }
}

}  // namespace

double radial_moment(int k1, int k2, int l, int power) {
  check_moment_args(k1, k2, l, power);
  // In u = rho^2 the integral is N1 N2 / 2 * <L_k1, u^s L_k2> under the
  // weight u^a e^-u, with a = l + 1/2 and s = P/2. Re-expanding both
  // polynomials in the basis orthogonal under u^(a+s) e^-u,
  //   L_k^(a) = sum_m C(m - s - 1, m) L_{k-m}^(a+s),
  // collapses the integral to one short sum with no appreciable cancellation
  // (a termwise Gamma-ratio double sum loses ~7 digits by k = 6):
  //   <L_k1, u^s L_k2> = sum_j c_{k1-j} c_{k2-j} Gamma(j+beta+1)/j!
  // For even P the coefficients vanish past m = s, making the moments with
  // |k1 - k2| > s exact zeros (orthogonality).
  const double s = 0.5 * power;
  const double beta = l + 0.5 + s;
  const int k_hi = std::max(k1, k2);
  const int k_lo = std::min(k1, k2);
  std::vector<double> c(k_hi + 1);
  c[0] = 1.0;
  for (int m = 1; m <= k_hi; ++m) {
    c[m] = c[m - 1] * (m - 1 - s) / m;
  }
  double sum = 0.0;
  double h = std::exp(std::lgamma(beta + 1.0));  // h_j = Gamma(j+beta+1)/j!
  for (int j = 0; j <= k_lo; ++j) {
    sum += c[k1 - j] * c[k2 - j] * h;
    h *= (j + beta + 1.0) / (j + 1.0);
  }
  return normalization(k1, l) * normalization(k2, l) * 0.5 * sum;
}

double quadrature_moment(int k1, int k2, int l, int power, int point_count) {
  check_moment_args(k1, k2, l, power);
  if (power % 2 == 0 && std::abs(k1 - k2) > power / 2) {
    // u^(P/2) L_k2 has degree k2 + P/2 < k1: orthogonality gives an exact zero
    return 0.0;
  }
  // Weight exponent matched to the full integrand so the remaining factor
  // L_k1 L_k2 is a polynomial of degree k1 + k2.
  const int min_points = (k1 + k2) / 2 + 1;
  if (point_count == 0) {
    point_count = min_points + 2;
  } else if (point_count < min_points) {
    throw std::invalid_argument(
        "quadrature_moment: " + std::to_string(point_count) +
        " points cannot integrate a degree-" + std::to_string(k1 + k2) +
        " polynomial factor exactly (need " + std::to_string(min_points) + ")");
  }
  // In terms of the orthonormalized polynomials the N_kl prefactors cancel:
  //   moment = sum_i w_i lt_k1(x_i) lt_k2(x_i).
  // Long double keeps the independent path below the 1e-12 agreement budget.
  const long double a = l + 0.5L;
  const long double beta = a + 0.5L * power;
  QuadratureRuleT<long double> rule =
      gauss_generalized_laguerre_t<long double>(point_count, beta);
  long double sum = 0;
  for (int i = 0; i < point_count; ++i) {
    sum += rule.weights[i] * laguerre_normalized(k1, a, rule.nodes[i]) *
           laguerre_normalized(k2, a, rule.nodes[i]);
  }
  return static_cast<double>(sum);
}

double matrix_element(const QuantumNumbers& a, const QuantumNumbers& b,
                      const PotentialSpec& spec) {
  if (a.l != b.l) return 0.0;  // orthonormal Y_l0 factors
  return spec.lambda * radial_moment(a.k, b.k, a.l, spec.power);
}

CouplingMatrix build_coupling(int rows, int cols, const PotentialSpec& spec) {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("coupling block must have at least one row and column");
  }
  spec.validate();
  BasisTable table = build_basis_table(std::max(rows, cols));
  CouplingMatrix coupling;
  coupling.entries = Eigen::MatrixXd::Zero(rows, cols);
  for (int p = 1; p <= rows; ++p) {
    for (int q = 1; q <= cols; ++q) {
      const QuantumNumbers& sp = table.state(p);
      const QuantumNumbers& sq = table.state(q);
      if (sp.l != sq.l) continue;  // keep the selection-rule zeros exact
      if (q < p && q <= rows && p <= cols) {
        coupling.entries(p - 1, q - 1) = coupling.entries(q - 1, p - 1);
        continue;
      }
      coupling.entries(p - 1, q - 1) = matrix_element(sp, sq, spec);
    }
  }
  return coupling;
}

}  // namespace finrank
