#include "finrank/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "finrank/errors.hpp"

namespace finrank {

JacobiEigenResult jacobi_eigensolve(const Eigen::MatrixXd& symmetric) {
  if (symmetric.rows() != symmetric.cols()) {
    throw std::invalid_argument("jacobi_eigensolve needs a square matrix");
  }
  const Eigen::Index n = symmetric.rows();
  Eigen::MatrixXd a = 0.5 * (symmetric + symmetric.transpose());
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);

  auto off_norm = [&]() {
    double sum = 0;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) sum += a(p, q) * a(p, q);
    }
    return std::sqrt(2.0 * sum);
  };

  const double scale = std::max(a.norm(), 1e-300);
  const int max_sweeps = 60;
  int sweep = 0;
  while (off_norm() > 1e-15 * scale && sweep < max_sweeps) {
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        // two-sided rotation in the (p, q) plane
        for (Eigen::Index i = 0; i < n; ++i) {
          double aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(i, q) = s * aip + c * aiq;
        }
        for (Eigen::Index i = 0; i < n; ++i) {
          double api = a(p, i), aqi = a(q, i);
          a(p, i) = c * api - s * aqi;
          a(q, i) = s * api + c * aqi;
        }
        for (Eigen::Index i = 0; i < n; ++i) {
          double vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
    }
    ++sweep;
  }
  if (off_norm() > 1e-12 * scale) {
    throw NumericalError("Jacobi eigensolver did not converge");
  }

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });

  JacobiEigenResult result;
  result.values.resize(n);
  result.vectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    result.values[j] = a(order[j], order[j]);
    result.vectors.col(j) = v.col(order[j]);
  }
  return result;
}

std::vector<double> galerkin_diagonalize(int size, const PotentialSpec& spec) {
  if (size < 1) {
    throw std::invalid_argument("basis size must be at least 1");
  }
  spec.validate();
  BasisTable table = build_basis_table(size);
  Eigen::MatrixXd m = build_coupling(size, size, spec).entries;
  for (int n = 1; n <= size; ++n) {
    m(n - 1, n - 1) += table.energy(n);
  }
  return jacobi_eigensolve(m).values;
}

double first_order_pt(const QuantumNumbers& qn, const PotentialSpec& spec) {
  if (qn.k < 0 || qn.l < 0 || qn.m != 0) {
    throw std::invalid_argument("invalid quantum numbers");
  }
  if (spec.lambda < 0) {
    throw std::invalid_argument("lambda: coupling must be non-negative");
  }
  // lambda = 0 is legal here: the correction is linear in the coupling.
  return energy(qn) + spec.lambda * radial_moment(qn.k, qn.k, qn.l, spec.power);
}

OracleReport galerkin_report(const SolverConfig& config, const PotentialSpec& spec) {
  if (config.r_rank != config.n_rank) {
    throw std::invalid_argument(
        "the Galerkin equivalence holds for R = N configurations only");
  }
  SpectrumResult result = solve_spectrum(config, spec);
  std::vector<double> reference = galerkin_diagonalize(config.n_rank, spec);

  OracleReport report;
  report.method = "galerkin";
  report.tolerance = 1e-10;
  report.reference = reference;
  for (const Root& root : result.roots) report.computed.push_back(root.energy);
  std::size_t count = std::min(report.reference.size(), report.computed.size());
  for (std::size_t i = 0; i < count; ++i) {
    report.max_abs_deviation = std::max(
        report.max_abs_deviation, std::abs(report.reference[i] - report.computed[i]));
  }
  if (report.reference.size() != report.computed.size()) {
    report.max_abs_deviation = std::numeric_limits<double>::infinity();
  }
  return report;
}

OracleReport pt1_report(const SolverConfig& config, const PotentialSpec& spec) {
  SpectrumResult result = solve_spectrum(config, spec);
  if (result.roots.empty()) {
    throw NumericalError("no roots found for the perturbative comparison");
  }
  OracleReport report;
  report.method = "pt1";
  report.tolerance = 5e-4;  // second-order shift is O(lambda^2)
  report.reference.push_back(first_order_pt(QuantumNumbers{0, 0, 0}, spec));
  report.computed.push_back(result.roots.front().energy);
  report.max_abs_deviation = std::abs(report.reference[0] - report.computed[0]);
  return report;
}

OracleReport quadrature_report(int k_max, int l_max, int power) {
  OracleReport report;
  report.method = "quadrature";
  report.tolerance = 1e-12;  // relative agreement of the two evaluation paths
  for (int l = 0; l <= l_max; ++l) {
    for (int k1 = 0; k1 <= k_max; ++k1) {
      for (int k2 = k1; k2 <= k_max; ++k2) {
        double analytic = radial_moment(k1, k2, l, power);
        double quad = quadrature_moment(k1, k2, l, power);
        report.reference.push_back(quad);
        report.computed.push_back(analytic);
        double rel = std::abs(analytic - quad) /
                     std::max({std::abs(analytic), std::abs(quad), 1e-300});
        report.max_abs_deviation = std::max(report.max_abs_deviation, rel);
      }
    }
  }
  return report;
}

}  // namespace finrank
