#pragma once

#include <vector>

namespace finrank {

// Oscillator state label. Only m = 0 states are used throughout.
struct QuantumNumbers {
  int k = 0;  // radial quantum number
  int l = 0;  // orbital quantum number
  int m = 0;

  int shell() const { return 2 * k + l; }
  friend bool operator==(const QuantumNumbers&, const QuantumNumbers&) = default;
};

// States listed shell by shell (increasing 2k+l); inside a shell l decreases,
// i.e. (0,s), (1,s-2), (2,s-4), ... Ordinals are 1-based.
class BasisTable {
 public:
  explicit BasisTable(int count);

  int size() const { return static_cast<int>(states_.size()); }
  const QuantumNumbers& state(int ordinal) const { return states_.at(ordinal - 1); }
  double energy(int ordinal) const { return energies_.at(ordinal - 1); }
  const std::vector<QuantumNumbers>& states() const { return states_; }
  const std::vector<double>& energies() const { return energies_; }

 private:
  std::vector<QuantumNumbers> states_;
  std::vector<double> energies_;
};

BasisTable build_basis_table(int count);

// Oscillator level in units of (hbar omega / 2): 2(2k+l) + 3.
double energy(const QuantumNumbers& qn);

// Generalized Laguerre polynomial L_k^(alpha)(x) by upward recurrence.
double laguerre(int degree, double alpha, double x);

// Orthonormalized variant L_k^(alpha) / sqrt(Gamma(k+alpha+1)/k!), which
// keeps quadrature sums at O(1) magnitude. The long double overload backs
// the moment cross-check.
double laguerre_normalized(int degree, double alpha, double x);
long double laguerre_normalized(int degree, long double alpha, long double x);

// Legendre polynomial P_l(x) by upward recurrence.
double legendre(int degree, double x);

// Radial normalization constant N_kl = sqrt(2 k! / Gamma(k + l + 3/2)).
double normalization(int k, int l);

// Dimensionless radial part N_kl rho^l L_k^(l+1/2)(rho^2) exp(-rho^2/2).
// The r0^(-3/2) scale and the Y_l0 angular factor are applied at evaluation
// time by evaluate_psi.
double radial_wavefunction(const QuantumNumbers& qn, double rho);

}  // namespace finrank
