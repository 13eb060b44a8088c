#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace finrank {

// Numerical failure during matrix assembly or root finding.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Requested energy fell inside the exclusion band around a Green's-function pole.
class PoleProximityError : public NumericalError {
 public:
  PoleProximityError(double energy, double pole)
      : NumericalError("energy " + std::to_string(energy) +
                       " is inside the exclusion band around the pole at " +
                       std::to_string(pole)),
        energy(energy),
        pole(pole) {}

  double energy;
  double pole;
};

// The reduced-eigenproblem path and the determinant-scan path found different
// roots. Treated as a hard failure, never a warning.
class PathDisagreementError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// The smallest singular value of A(E) is not separated from the next one, so
// the null direction is ambiguous. Both candidate directions are attached.
class AmbiguousNullSpaceError : public NumericalError {
 public:
  AmbiguousNullSpaceError(const std::string& what, std::vector<double> first,
                          std::vector<double> second)
      : NumericalError(what),
        first_direction(std::move(first)),
        second_direction(std::move(second)) {}

  std::vector<double> first_direction;
  std::vector<double> second_direction;
};

}  // namespace finrank
