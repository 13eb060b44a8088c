#pragma once

#include <vector>

namespace finrank {

// Gauss rule for the weight x^alpha e^{-x} on (0, inf); exact for polynomial
// factors of degree <= 2n - 1.
template <typename Real>
struct QuadratureRuleT {
  std::vector<Real> nodes;
  std::vector<Real> weights;
};

using QuadratureRule = QuadratureRuleT<double>;

template <typename Real>
QuadratureRuleT<Real> gauss_generalized_laguerre_t(int point_count, Real alpha);

QuadratureRule gauss_generalized_laguerre(int point_count, double alpha);

}  // namespace finrank
