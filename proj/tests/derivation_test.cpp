#include "doctest.h"

#include <random>

#include "atlas/derivation.hpp"
#include "test_util.hpp"

using namespace atlas;
using namespace atlas::testutil;

TEST_CASE("Leibniz extension: surface differential on [v, x1]") {
  WeightTruncation t(4);
  auto g = surface_generators(2);
  Derivation delta = surface_delta(g, 2, t);
  TensorElement omega = surface_omega(g, 2, t);
  size_t v = g->size() - 1;
  TensorElement bracket = lie_bracket(gen(g, v), gen(g, 0), t);  // [v, x1]
  // delta[v, x1] = [omega, x1] since delta(x1) = 0
  CHECK(delta.apply(bracket) == lie_bracket(omega, gen(g, 0), t));
}

TEST_CASE("derivation images validated for degree and primitivity") {
  WeightTruncation t(4);
  auto g = surface_generators(1);
  Derivation d(g, -1, t);
  TensorElement bad(g);
  bad.add_term({0, 1}, Scalar(1));  // x1 y1 alone is not a Lie element
  CHECK_THROWS_AS(d.set_image(2, bad), InvalidInput);
  TensorElement wrong_degree = gen(g, 0);  // degree 0, need |v| - 1 = 0... x1 has it
  CHECK_NOTHROW(d.set_image(2, wrong_degree));
  CHECK_THROWS_AS(d.set_image(0, gen(g, 1)), InvalidInput);  // 0 - 1 != 0
}

TEST_CASE("derivation bracket satisfies graded antisymmetry and Jacobi") {
  WeightTruncation t(4);
  auto g = make_generators({{"x", 0}, {"y", 1}});
  std::mt19937 rng(99);
  for (int it = 0; it < 8; ++it) {
    int n1 = it % 2, n2 = (it / 2) % 2, n3 = 1 - n1;
    Derivation a = random_derivation(g, n1, 1, 2, t, rng);
    Derivation b = random_derivation(g, n2, 1, 2, t, rng);
    Derivation c = random_derivation(g, n3, 0, 2, t, rng);
    int s12 = (n1 * n2) % 2 == 0 ? 1 : -1;
    CHECK(derivation_bracket(a, b) == Scalar(-s12) * derivation_bracket(b, a));
    auto s = [](int p, int q) { return Scalar((p * q) % 2 == 0 ? 1 : -1); };
    Derivation jac =
        s(n1, n3) * derivation_bracket(a, derivation_bracket(b, c)) +
        s(n2, n1) * derivation_bracket(b, derivation_bracket(c, a)) +
        s(n3, n2) * derivation_bracket(c, derivation_bracket(a, b));
    CHECK(jac.is_zero());
  }
}

TEST_CASE("bracket of derivations acts as commutator on elements") {
  WeightTruncation t(4);
  auto g = make_generators({{"x", 0}, {"y", 1}});
  std::mt19937 rng(7);
  Derivation a = random_derivation(g, 0, 1, 2, t, rng);
  Derivation b = random_derivation(g, 1, 1, 2, t, rng);
  LieBasis lb(g);
  TensorElement e = random_lie(lb, 2, 1, rng);
  TensorElement lhs = derivation_bracket(a, b).apply(e);
  TensorElement rhs = a.apply(b.apply(e)) - b.apply(a.apply(e));  // (-1)^{0*1} = 1
  CHECK(lhs.truncated(t) == rhs.truncated(t));
}

TEST_CASE("surface differential is a valid square-zero differential") {
  WeightTruncation t(6);
  for (int genus : {1, 2}) {
    auto g = surface_generators(genus);
    auto rep = check_chen_differential(surface_delta(g, genus, t));
    CHECK(rep.ok);
  }
}

TEST_CASE("differential validation rejects bad inputs") {
  WeightTruncation t(4);
  auto g = surface_generators(1);
  // wrong degree
  Derivation d0(g, 0, t);
  CHECK_FALSE(check_chen_differential(d0).degree_ok);
  // weight-1 image
  Derivation d1(g, -1, t);
  d1.set_image(2, gen(g, 0));
  auto rep = check_chen_differential(d1);
  CHECK_FALSE(rep.weight_ok);
  auto h = make_generators({{"a", 1}, {"b", 3}});
  Derivation d2(h, -1, t);
  d2.set_image(1, lie_bracket(gen(h, 0), gen(h, 0), t));  // b -> [a,a]
  CHECK(check_chen_differential(d2).ok);
  Derivation d3(h, -1, t);
  TensorElement ab = lie_bracket(gen(h, 0), gen(h, 1), t);  // degree 4, weight 2
  CHECK_THROWS_AS(d3.set_image(0, ab), InvalidInput);       // degree mismatch caught
}

TEST_CASE("weight components and filtration helpers") {
  WeightTruncation t(4);
  auto g = surface_generators(1);
  Derivation d = surface_delta(g, 1, t);
  CHECK(d.min_weight_level() == 1);
  CHECK(d.max_weight_level() == 1);
  CHECK(d.is_weight_raising());
  CHECK(d.weight_component(1) == d);
  CHECK(d.weight_component(2).is_zero());
  Derivation lin(g, 0, t);
  lin.set_image(0, gen(g, 1));
  CHECK_FALSE(lin.is_weight_raising());
  CHECK(lin.min_weight_level() == 0);
}
