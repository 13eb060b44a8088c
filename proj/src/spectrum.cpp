#include "finrank/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "finrank/errors.hpp"

namespace finrank {

namespace {

constexpr double kNullResidualTol = 1e-8;
constexpr double kSeparationFactor = 100.0;  // sigma_next must exceed this times sigma_min

// Flip so the largest-magnitude entry is positive; eigen/null directions are
// otherwise sign-ambiguous between runs.
void fix_sign(Eigen::VectorXd& v) {
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (v(imax) < 0) v = -v;
}

StateExpansion finalize(double root, ExpansionForm form, Eigen::VectorXd coeffs,
                        const Assembly& assembly) {
  double norm = coeffs.norm();
  if (!(norm > 0) || !std::isfinite(norm)) {
    throw NumericalError("state expansion has no finite norm");
  }
  coeffs /= norm;
  fix_sign(coeffs);
  Eigen::Index imax = 0;
  coeffs.cwiseAbs().maxCoeff(&imax);

  StateExpansion expansion;
  expansion.root = root;
  expansion.form = form;
  expansion.sector_l = assembly.table.state(static_cast<int>(imax) + 1).l;
  for (Eigen::Index n = 0; n < coeffs.size(); ++n) {
    expansion.coefficients[static_cast<int>(n) + 1] = coeffs(n);
  }
  return expansion;
}

}  // namespace

Eigen::VectorXd amplitudes(double root, const Assembly& assembly,
                           const SolverConfig& config) {
  Eigen::MatrixXd a = build_A(root, assembly, config);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const Eigen::Index n = a.rows();
  double sigma_min = sigma(n - 1);

  if (sigma_min > kNullResidualTol * std::max(1.0, sigma(0))) {
    std::ostringstream msg;
    msg << "energy " << root << " is not a root of det A: smallest singular value "
        << sigma_min << " is not negligible";
    throw NumericalError(msg.str());
  }
  if (n >= 2 && sigma(n - 2) <= kSeparationFactor * sigma_min) {
    Eigen::VectorXd first = svd.matrixV().col(n - 1);
    Eigen::VectorXd second = svd.matrixV().col(n - 2);
    std::ostringstream msg;
    msg << "ambiguous null space of A(" << root << "): singular values "
        << sigma_min << " and " << sigma(n - 2) << " are not separated";
    throw AmbiguousNullSpaceError(
        msg.str(), std::vector<double>(first.data(), first.data() + n),
        std::vector<double>(second.data(), second.data() + n));
  }
  Eigen::VectorXd b = svd.matrixV().col(n - 1);
  fix_sign(b);
  return b;
}

Eigen::VectorXd amplitudes(double root, const SolverConfig& config,
                           const PotentialSpec& spec) {
  return amplitudes(root, assemble(config, spec), config);
}

StateExpansion reconstruct_truncated(double root, const Eigen::VectorXd& b,
                                     const Assembly& assembly) {
  const Eigen::Index n = b.size();
  Eigen::VectorXd coeffs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double denominator = assembly.eps(i) - root;
    if (denominator == 0.0) {
      throw NumericalError("root coincides exactly with the level at " +
                           std::to_string(assembly.eps(i)));
    }
    coeffs(i) = b(i) / denominator;
  }
  return finalize(root, ExpansionForm::truncated, std::move(coeffs), assembly);
}

StateExpansion reconstruct_truncated(double root, const Eigen::VectorXd& b,
                                     const SolverConfig& config,
                                     const PotentialSpec& spec) {
  return reconstruct_truncated(root, b, assemble(config, spec));
}

StateExpansion reconstruct_full(double root, const Eigen::VectorXd& b,
                                const Assembly& assembly) {
  // c_r = (V^T D^{-1} b)_r / (eps_r - E); for r <= N the projection collapses
  // to b_r itself.
  Eigen::VectorXd projected = assembly.v_nr.transpose() * (assembly.d_inv * b);
  const Eigen::Index r_rank = projected.size();
  Eigen::VectorXd coeffs(r_rank);
  for (Eigen::Index r = 0; r < r_rank; ++r) {
    double denominator = assembly.eps(r) - root;
    if (denominator == 0.0) {
      throw NumericalError("root coincides exactly with the level at " +
                           std::to_string(assembly.eps(r)));
    }
    coeffs(r) = projected(r) / denominator;
  }
  return finalize(root, ExpansionForm::full, std::move(coeffs), assembly);
}

StateExpansion reconstruct_full(double root, const Eigen::VectorXd& b,
                                const SolverConfig& config,
                                const PotentialSpec& spec) {
  return reconstruct_full(root, b, assemble(config, spec));
}

double evaluate_psi(const StateExpansion& expansion, double rho, double cos_theta) {
  if (rho < 0) {
    throw std::invalid_argument("rho must be non-negative");
  }
  if (std::abs(cos_theta) > 1.0) {
    throw std::invalid_argument("cos_theta must lie in [-1, 1]");
  }
  if (expansion.coefficients.empty()) return 0.0;
  BasisTable table = build_basis_table(expansion.coefficients.rbegin()->first);
  double sum = 0.0;
  for (const auto& [ordinal, coefficient] : expansion.coefficients) {
    const QuantumNumbers& qn = table.state(ordinal);
    double angular = std::sqrt((2 * qn.l + 1) / (4.0 * std::numbers::pi)) *
                     legendre(qn.l, cos_theta);
    sum += coefficient * radial_wavefunction(qn, rho) * angular;
  }
  return sum;
}

}  // namespace finrank
