#include "doctest.h"

#include <random>

#include "atlas/automorphism.hpp"
#include "test_util.hpp"

using namespace atlas;
using namespace atlas::testutil;

TEST_CASE("exp(0) is the identity and log(identity) is 0") {
  WeightTruncation t(4);
  auto g = surface_generators(1);
  Derivation zero(g, 0, t);
  FilteredAutomorphism id(g, t);
  CHECK(exp_derivation(zero) == id);
  CHECK(log_automorphism(id).is_zero());
}

TEST_CASE("exp series matches direct evaluation for a cubic-image derivation") {
  WeightTruncation t(4);
  auto g = two_deg0();
  Derivation d(g, 0, t);
  // x -> [y,[x,y]]
  d.set_image(0, lie_bracket(gen(g, 1), lie_bracket(gen(g, 0), gen(g, 1), t), t));
  FilteredAutomorphism phi = exp_derivation(d);
  // series stops at the linear term: D^2(x) has weight 5 > N
  CHECK(phi.image(0) == gen(g, 0) + d.image(0));
  CHECK(phi.image(1) == gen(g, 1));

  // quadratic-image derivation at N=4 keeps the D^2/2 term
  Derivation e(g, 0, t);
  e.set_image(0, lie_bracket(gen(g, 0), gen(g, 1), t));
  FilteredAutomorphism psi = exp_derivation(e);
  TensorElement d1 = e.image(0);
  TensorElement d2 = e.apply(d1);
  TensorElement d3 = e.apply(d2);
  TensorElement expect =
      gen(g, 0) + d1 + Scalar(1, 2) * d2 + Scalar(1, 6) * d3;
  CHECK(psi.image(0) == expect.truncated(t));
}

TEST_CASE("exp/log round trips exactly on random weight-raising derivations") {
  std::mt19937 rng(2024);
  auto g = make_generators({{"x", 0}, {"y", 1}});
  for (int n : {4, 5}) {
    WeightTruncation t(n);
    for (int it = 0; it < 10; ++it) {
      Derivation d = random_derivation(g, 0, 1, t.N - 1, t, rng);
      CHECK(log_automorphism(exp_derivation(d)) == d);
      FilteredAutomorphism phi = exp_derivation(d);
      CHECK(exp_derivation(log_automorphism(phi)) == phi);
    }
  }
}

TEST_CASE("automorphisms are multiplicative on brackets") {
  WeightTruncation t(5);
  auto g = make_generators({{"x", 0}, {"y", 1}});
  std::mt19937 rng(31);
  Derivation d = random_derivation(g, 0, 1, 3, t, rng);
  FilteredAutomorphism phi = exp_derivation(d);
  LieBasis lb(g);
  TensorElement a = random_lie(lb, 1, 0, rng), b = random_lie(lb, 2, 1, rng);
  CHECK(phi.apply(lie_bracket(a, b, t)) == lie_bracket(phi.apply(a), phi.apply(b), t));
}

TEST_CASE("bch reproduces composition and is associative mod truncation") {
  WeightTruncation t(5);
  auto g = make_generators({{"x", 0}, {"y", 1}});
  std::mt19937 rng(555);
  Derivation zero(g, 0, t);
  Derivation a = random_derivation(g, 0, 1, 3, t, rng);
  Derivation b = random_derivation(g, 0, 1, 3, t, rng);
  Derivation c = random_derivation(g, 0, 1, 3, t, rng);
  CHECK(bch(a, zero) == a);
  CHECK(bch(zero, b) == b);
  CHECK(exp_derivation(bch(a, b)) == compose(exp_derivation(a), exp_derivation(b)));
  CHECK(bch(a, bch(b, c)) == bch(bch(a, b), c));
  // leading terms: a + b + [a,b]/2 agree through weight level 2
  Derivation lead = a + b + Scalar(1, 2) * derivation_bracket(a, b);
  Derivation full = bch(a, b);
  CHECK(full.weight_component(1) == lead.weight_component(1));
  CHECK(full.weight_component(2) == lead.weight_component(2));
}

TEST_CASE("inverse works for general linear parts") {
  WeightTruncation t(4);
  auto g = two_deg0();
  FilteredAutomorphism phi(g, t);
  // x -> x + y + [x,y], y -> y
  phi.set_image(0, gen(g, 0) + gen(g, 1) + lie_bracket(gen(g, 0), gen(g, 1), t));
  FilteredAutomorphism inv = phi.inverse();
  FilteredAutomorphism id(g, t);
  CHECK(compose(phi, inv) == id);
  CHECK(compose(inv, phi) == id);
  // singular linear part rejected
  FilteredAutomorphism bad(g, t);
  bad.set_image(0, gen(g, 1));
  CHECK_THROWS_AS(bad.inverse(), InvalidInput);
}

TEST_CASE("transport: scaling fixes the zero differential, symplectic maps fix omega") {
  WeightTruncation t(4);
  auto s = make_generators({{"x", 1}});
  ChenDifferential zero{Derivation(s, -1, t)};
  MatQ m(1, 1);
  m.at(0, 0) = Scalar(7, 3);
  ChenDifferential moved = transport(LinearIso(s, m), zero);
  CHECK(moved.derivation().is_zero());

  auto g = surface_generators(1);
  ChenDifferential delta{surface_delta(g, 1, t)};
  // (x,y) -> (x + y, y) preserves [x,y]; v fixed
  MatQ sp(3, 3);
  sp.at(0, 0) = 1;
  sp.at(1, 0) = 1;
  sp.at(1, 1) = 1;
  sp.at(2, 2) = 1;
  ChenDifferential moved2 = transport(LinearIso(g, sp), delta);
  CHECK(moved2.derivation() == delta.derivation());
  // a non-symplectic scaling does not
  MatQ sc = MatQ::identity(3);
  sc.at(0, 0) = 2;
  CHECK_FALSE(transport(LinearIso(g, sc), delta).derivation() == delta.derivation());
}

TEST_CASE("transport rejects degree-mixing or singular matrices") {
  WeightTruncation t(4);
  auto g = surface_generators(1);
  MatQ m = MatQ::identity(3);
  m.at(2, 0) = 1;  // sends degree-0 x into degree-1 v
  CHECK_THROWS_AS(LinearIso(g, m), InvalidInput);
  MatQ z(3, 3);
  CHECK_THROWS_AS(LinearIso(g, z), InvalidInput);
}

TEST_CASE("qaut class: exact directions are trivial, homology classes are detected") {
  WeightTruncation t(4);
  auto g = surface_generators(2);
  ChenDifferential delta{surface_delta(g, 2, t)};
  DerivationSpace sp(g, t);
  std::mt19937 rng(4321);

  // phi = exp(ad(delta) P) for random degree-1 P -> trivial
  for (int it = 0; it < 5; ++it) {
    Derivation p = random_derivation(g, 1, 0, 2, t, rng);
    Derivation adp = derivation_bracket(delta.derivation(), p);
    auto res = qaut_class(exp_derivation(adp), delta, t);
    CHECK(res.trivial);
  }

  // phi = exp(D) for a homology representative -> level 1, class = coordinates
  auto hom = derivation_homology(delta, 0, std::make_pair(1, 1), t);
  REQUIRE(hom.total_dim == 4);
  const auto& reps = hom.blocks.front().representatives;
  for (size_t j = 0; j < reps.size(); ++j) {
    auto res = qaut_class(exp_derivation(reps[j]), delta, t);
    REQUIRE_FALSE(res.trivial);
    CHECK(res.level == 1);
    REQUIRE(res.class_coords.size() == reps.size());
    for (size_t k = 0; k < reps.size(); ++k)
      CHECK(res.class_coords[k] == Scalar(k == j ? 1 : 0));
  }

  // gauge invariance: multiplying by an exact exponential keeps the class
  Derivation d = reps[2];
  Derivation p = random_derivation(g, 1, 0, 2, t, rng);
  Derivation adp = derivation_bracket(delta.derivation(), p);
  auto res1 = qaut_class(exp_derivation(d), delta, t);
  auto res2 = qaut_class(compose(exp_derivation(d), exp_derivation(adp)), delta, t);
  CHECK(res1.level == res2.level);
  CHECK(res1.class_coords == res2.class_coords);
}

TEST_CASE("qaut class rejects automorphisms outside the stabilizer") {
  WeightTruncation t(4);
  auto g = surface_generators(1);
  ChenDifferential delta{surface_delta(g, 1, t)};
  FilteredAutomorphism phi(g, t);
  // x -> x + [x,[x,y]] does not commute with delta
  phi.set_image(0, gen(g, 0) + lie_bracket(gen(g, 0), lie_bracket(gen(g, 0), gen(g, 1), t), t));
  CHECK_THROWS_AS(qaut_class(phi, delta, t), InvalidInput);
}
