#pragma once

#include "atlas/cochain.hpp"
#include "atlas/homology.hpp"

namespace atlas {

/// The 2-sphere minimal model: one degree-1 generator x, zero
/// differential, and the obstruction pipeline on the minimal simplicial
/// 2-sphere.
struct SphereReport {
  size_t der_dim = 0;  // expect 2: x d/dx and [x,x] d/dx
  std::vector<Derivation> der_basis;
  size_t h1_dim = 0;  // expect 1
  std::vector<Derivation> h1_reps;
  size_t h2_dim = 0;  // expect 0
  ClassReduction obstruction;  // c(sigma) = [x,x] d/dx on the 2-sphere model
  Vec characteristic;          // dual-basis evaluation, expect {1}
};

SphereReport sphere_report(const WeightTruncation& trunc);

/// Adaptive quadrature of the radial integral 2 * int_0^inf dx/(1+x)^3,
/// the only floating-point computation in the library. `scale` multiplies
/// the integrand (for linearity checks).
struct IntegralReport {
  double value = 0.0;
  double expected = 1.0;
  double closed_form = 1.0;  // from the antiderivative -1/(1+x)^2
  double error_bound = 0.0;
  bool converged = false;
  bool ok = false;  // |value - expected| <= tolerance
};

IntegralReport sphere_integral_check(double tolerance, double scale = 1.0);

}  // namespace atlas
