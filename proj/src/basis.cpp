#include "finrank/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace finrank {

BasisTable::BasisTable(int count) {
  if (count < 1) {
    throw std::invalid_argument("basis table count must be at least 1");
  }
  states_.reserve(count);
  energies_.reserve(count);
  // Shell by shell; inside shell s the states are (0,s), (1,s-2), ...
  for (int shell = 0; static_cast<int>(states_.size()) < count; ++shell) {
    for (int k = 0; 2 * k <= shell && static_cast<int>(states_.size()) < count; ++k) {
      QuantumNumbers qn{k, shell - 2 * k, 0};
      states_.push_back(qn);
      energies_.push_back(finrank::energy(qn));
    }
  }
}

BasisTable build_basis_table(int count) { return BasisTable(count); }

double energy(const QuantumNumbers& qn) {
  return static_cast<double>(2 * (2 * qn.k + qn.l) + 3);
}

double laguerre(int degree, double alpha, double x) {
  if (degree < 0) {
    throw std::invalid_argument("laguerre degree must be non-negative");
  }
  double prev = 1.0;  // L_0
  if (degree == 0) return prev;
  double curr = 1.0 + alpha - x;  // L_1
  for (int k = 1; k < degree; ++k) {
    double next = ((2 * k + 1 + alpha - x) * curr - (k + alpha) * prev) / (k + 1);
    prev = curr;
    curr = next;
  }
  return curr;
}

namespace {

template <typename Real>
Real laguerre_normalized_impl(int degree, Real alpha, Real x) {
  if (degree < 0) {
    throw std::invalid_argument("laguerre degree must be non-negative");
  }
  Real prev = std::exp(Real(-0.5) * std::lgamma(alpha + 1));
  if (degree == 0) return prev;
  Real curr = (1 + alpha - x) * prev / std::sqrt(1 + alpha);
  for (int k = 1; k < degree; ++k) {
    Real next = ((2 * k + 1 + alpha - x) * curr -
                 std::sqrt(Real(k) * (k + alpha)) * prev) /
                std::sqrt(Real(k + 1) * (k + 1 + alpha));
    prev = curr;
    curr = next;
  }
  return curr;
}

}  // namespace

double laguerre_normalized(int degree, double alpha, double x) {
  return laguerre_normalized_impl<double>(degree, alpha, x);
}

long double laguerre_normalized(int degree, long double alpha, long double x) {
  return laguerre_normalized_impl<long double>(degree, alpha, x);
}

double legendre(int degree, double x) {
  if (degree < 0) {
    throw std::invalid_argument("legendre degree must be non-negative");
  }
  double prev = 1.0;  // P_0
  if (degree == 0) return prev;
  double curr = x;  // P_1
  for (int l = 1; l < degree; ++l) {
    double next = ((2 * l + 1) * x * curr - l * prev) / (l + 1);
    prev = curr;
    curr = next;
  }
  return curr;
}

double normalization(int k, int l) {
  if (k < 0 || l < 0) {
    throw std::invalid_argument("quantum numbers must be non-negative");
  }
  // Closed form of the defining integral: N_kl = sqrt(2 k! / Gamma(k+l+3/2)).
  return std::exp(0.5 * (std::log(2.0) + std::lgamma(k + 1.0) -
                         std::lgamma(k + l + 1.5)));
}

double radial_wavefunction(const QuantumNumbers& qn, double rho) {
  if (rho < 0) {
    throw std::invalid_argument("rho must be non-negative");
  }
  return normalization(qn.k, qn.l) * std::pow(rho, qn.l) *
         laguerre(qn.k, qn.l + 0.5, rho * rho) * std::exp(-0.5 * rho * rho);
}

}  // namespace finrank
