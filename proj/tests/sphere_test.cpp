#include "doctest.h"

#include <cmath>

#include "atlas/sphere.hpp"

using namespace atlas;

TEST_CASE("two-sphere report: derivation space and homology dimensions") {
  SphereReport rep = sphere_report(WeightTruncation(3));
  CHECK(rep.der_dim == 2);
  REQUIRE(rep.der_basis.size() == 2);
  // x d/dx and (a multiple of) [x,x] d/dx
  auto gens = rep.der_basis[0].generators();
  TensorElement x = make_generator_element(gens, 0);
  TensorElement half_bracket =
      (Scalar(1) / Scalar(2)) * lie_bracket(x, x, WeightTruncation(3));
  CHECK(rep.der_basis[0].image(0) == x);
  CHECK(rep.der_basis[1].image(0) == half_bracket);
  CHECK(rep.h1_dim == 1);
  REQUIRE(rep.h1_reps.size() == 1);
  CHECK(rep.h1_reps[0].image(0) == half_bracket);
  CHECK(rep.h2_dim == 0);
}

TEST_CASE("two-sphere report: obstruction class and characteristic number") {
  SphereReport rep = sphere_report(WeightTruncation(3));
  CHECK(rep.obstruction.is_cocycle);
  CHECK_FALSE(rep.obstruction.trivial);
  REQUIRE(rep.obstruction.class_coords.size() == 1);
  CHECK(rep.obstruction.class_coords[0] == Scalar(1));
  REQUIRE(rep.characteristic.size() == 1);
  CHECK(rep.characteristic[0] == Scalar(1));
}

TEST_CASE("radial integral: adaptive quadrature against the closed form") {
  IntegralReport r = sphere_integral_check(1e-9);
  CHECK(r.converged);
  CHECK(r.ok);
  CHECK(r.closed_form == 1.0);
  CHECK(std::fabs(r.value - 1.0) <= 1e-9);

  IntegralReport r2 = sphere_integral_check(1e-9, 2.0);
  CHECK(r2.ok);
  CHECK(std::fabs(r2.value - 2.0) <= 2e-9);
  // linearity of the quadrature in the integrand scale
  CHECK(std::fabs(r2.value - 2.0 * r.value) <= 1e-12);

  CHECK_THROWS_AS(sphere_integral_check(0.0), InvalidInput);
}
