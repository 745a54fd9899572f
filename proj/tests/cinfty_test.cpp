#include "doctest.h"

#include <random>

#include "atlas/automorphism.hpp"
#include "atlas/cinfty.hpp"
#include "atlas/connection.hpp"
#include "atlas/homology.hpp"
#include "atlas/twisted_complex.hpp"
#include "test_util.hpp"

using namespace atlas;
using namespace atlas::testutil;

namespace {

GradedBasis sphere_basis() { return GradedBasis{{"v"}, {2}}; }

GradedBasis surface_basis(int genus) {
  GradedBasis b;
  for (int i = 1; i <= genus; ++i) {
    b.names.push_back("x" + std::to_string(i));
    b.degrees.push_back(1);
    b.names.push_back("y" + std::to_string(i));
    b.degrees.push_back(1);
  }
  b.names.push_back("v");
  b.degrees.push_back(2);
  return b;
}

CInftyStructure surface_cup(int genus) {
  CInftyStructure m(surface_basis(genus));
  size_t v = 2 * genus;
  for (int i = 0; i < genus; ++i) {
    m.add_term({size_t(2 * i), size_t(2 * i + 1)}, v, Scalar(1));
    m.add_term({size_t(2 * i + 1), size_t(2 * i)}, v, Scalar(-1));
  }
  return m;
}

/// A mixed-weight differential with higher products: the surface
/// differential conjugated by a filtration-level-1 exponential.
ChenDifferential conjugated_surface(int genus, const WeightTruncation& t, size_t which) {
  auto g = surface_generators(genus);
  Derivation delta = surface_delta(g, genus, t);
  DerivationSpace sp(g, t);
  FilteredAutomorphism u = exp_derivation(sp.basis_element(0, 1, which));
  FilteredAutomorphism u_inv = u.inverse();
  Derivation conj(g, -1, t);
  for (size_t i = 0; i < g->size(); ++i)
    conj.set_image(i, u.apply(delta.apply(u_inv.image(i))));
  return ChenDifferential(conj);
}

}  // namespace

TEST_CASE("zero products pass validation and give the zero differential") {
  CInftyStructure m(sphere_basis());
  CHECK(check_cinfty(m).ok);
  WeightTruncation t(4);
  ChenDifferential d = chen_delta_from_cinfty(m, t);
  CHECK(d.derivation().is_zero());
  auto gens = d.derivation().generators();
  CHECK(gens->size() == 1);
  CHECK(gens->degree(0) == 1);  // suspension of the degree-2 class
}

TEST_CASE("surface cup product: valid, and the dictionary gives omega d/dv") {
  WeightTruncation t(4);
  for (int genus : {1, 2}) {
    CInftyStructure m = surface_cup(genus);
    CHECK(check_cinfty(m).ok);
    ChenDifferential d = chen_delta_from_cinfty(m, t);
    auto g = d.derivation().generators();
    CHECK(d.derivation() == surface_delta(g, genus, t));
    // inverse dictionary roundtrip
    CHECK(cinfty_from_delta(d, surface_basis(genus)) == m);
  }
}

TEST_CASE("associativity violation fails the arity-3 relation, shuffles pass") {
  // even-degree classes p, q, r, s with m2(p,p)=q, m2(p,q)=m2(q,p)=r,
  // m2(q,q)=s: the associator on (p,p,q) is s != 0.
  GradedBasis b{{"p", "q", "r", "s"}, {2, 4, 6, 8}};
  CInftyStructure m(b);
  m.add_term({0, 0}, 1, Scalar(1));
  m.add_term({0, 1}, 2, Scalar(1));
  m.add_term({1, 0}, 2, Scalar(1));
  m.add_term({1, 1}, 3, Scalar(1));
  auto rep = check_cinfty(m);
  CHECK(rep.shuffle_ok);
  CHECK_FALSE(rep.ainfty_ok);
  CHECK_FALSE(rep.ok);
}

TEST_CASE("commutativity violation fails the shuffle condition") {
  CInftyStructure m(surface_basis(1));
  m.add_term({0, 1}, 2, Scalar(1));
  m.add_term({1, 0}, 2, Scalar(1));  // wrong relative sign
  auto rep = check_cinfty(m);
  CHECK_FALSE(rep.shuffle_ok);
  WeightTruncation t(4);
  CHECK_THROWS_AS(chen_delta_from_cinfty(m, t), InvalidInput);
}

TEST_CASE("degree rule is enforced on product terms") {
  CInftyStructure m(surface_basis(1));
  CHECK_THROWS_AS(m.add_term({0, 1}, 0, Scalar(1)), InvalidInput);
  CHECK_THROWS_AS(m.add_term({2}, 2, Scalar(1)), InvalidInput);  // unary on minimal
}

TEST_CASE("dictionary roundtrip on mixed-weight differentials") {
  WeightTruncation t(5);
  GradedBasis b = surface_basis(2);
  for (size_t which : {0u, 3u, 7u}) {
    ChenDifferential d = conjugated_surface(2, t, which);
    CInftyStructure m = cinfty_from_delta(d, b);
    CHECK(check_cinfty(m).ok);
    ChenDifferential back = chen_delta_from_cinfty(m, t);
    CHECK(back.derivation() == d.derivation());
  }
}

TEST_CASE("dictionary is transport-equivariant") {
  WeightTruncation t(4);
  int genus = 2;
  CInftyStructure m = surface_cup(genus);
  GradedBasis b = m.basis();
  std::mt19937 rng(808);
  std::uniform_int_distribution<int> coeff(-2, 2);
  size_t q = b.size();
  for (int trial = 0; trial < 5; ++trial) {
    // random degree-preserving invertible map: unit upper-triangular on the
    // degree-1 block, identity on v
    MatQ mat = MatQ::identity(q);
    for (size_t i = 0; i + 1 < q; ++i)
      for (size_t j = i + 1; j + 1 < q; ++j) mat.at(i, j) = Scalar(coeff(rng));
    // transported products: (g.m)(a1..ak) = g m(g^{-1} a1, ..., g^{-1} ak)
    ChenDifferential d = chen_delta_from_cinfty(m, t);
    MatQ inv = *mat.inverse();
    // generators transform dually to the cohomology basis
    LinearIso iso(d.derivation().generators(), inv.transposed());
    CInftyStructure gm(b);
    for (size_t a1 = 0; a1 < q - 1; ++a1)
      for (size_t a2 = 0; a2 < q - 1; ++a2) {
        // pull inputs back through g^{-1}, push output through g
        Vec total(q, Scalar(0));
        for (size_t i1 = 0; i1 < q - 1; ++i1)
          for (size_t i2 = 0; i2 < q - 1; ++i2) {
            if (inv.at(i1, a1) == 0 || inv.at(i2, a2) == 0) continue;
            Vec p = m.product({i1, i2});
            for (size_t c = 0; c < q; ++c)
              total[c] += inv.at(i1, a1) * inv.at(i2, a2) * p[c];
          }
        Vec pushed(q, Scalar(0));
        for (size_t c = 0; c < q; ++c)
          for (size_t r = 0; r < q; ++r) pushed[r] += mat.at(r, c) * total[c];
        for (size_t r = 0; r < q; ++r)
          if (pushed[r] != 0) gm.add_term({a1, a2}, r, pushed[r]);
      }
    ChenDifferential lhs = chen_delta_from_cinfty(gm, t);
    ChenDifferential rhs = transport(iso, d);
    CHECK(lhs.derivation() == rhs.derivation());
  }
}

TEST_CASE("canonical connections are flat; sign mutants are not") {
  WeightTruncation t(4);
  // sphere: one degree-2 class, no products
  CInftyStructure ms(sphere_basis());
  FormalConnection sphere_conn = canonical_formal_connection(ms, t);
  DGAModel sphere_dga = formal_dga(ms);
  CHECK(mc_check(sphere_dga, sphere_conn).ok);
  // the connection is the tautological one: v ox x
  CHECK(sphere_conn.omega[0] ==
        make_generator_element(sphere_conn.delta.derivation().generators(), 0));

  // surface
  CInftyStructure m = surface_cup(2);
  FormalConnection conn = canonical_formal_connection(m, t);
  DGAModel dga = formal_dga(m);
  CHECK(mc_check(dga, conn).ok);

  // v-term sign flip breaks flatness
  auto omega = conn.omega;
  omega.back() *= Scalar(-1);
  FormalConnection mutant(conn.basis, omega, conn.delta, t);
  auto rep = mc_check(dga, mutant);
  CHECK_FALSE(rep.ok);
  CHECK(rep.detail.find("v") != std::string::npos);
}

TEST_CASE("formal DGA model of a non-formal structure is not flat") {
  WeightTruncation t(5);
  ChenDifferential d = conjugated_surface(2, t, 5);
  GradedBasis b = surface_basis(2);
  CInftyStructure m = cinfty_from_delta(d, b);
  REQUIRE(m.max_arity() >= 3);  // conjugation created higher products
  DGAModel dga = formal_dga(m);
  FormalConnection conn = canonical_formal_connection(m, t);
  CHECK_FALSE(mc_check(dga, conn).ok);
}

TEST_CASE("twisted differential squares to zero on flat connections") {
  WeightTruncation t(4);
  CInftyStructure m = surface_cup(2);
  FormalConnection conn = canonical_formal_connection(m, t);
  DGAModel dga = formal_dga(m);
  TwistedElement omega = conn.as_element();
  auto D = [&](const TwistedElement& x) {
    return apply_dga_d(dga, x) + apply_delta(conn.delta, x) +
           twisted_bracket(dga, omega, x);
  };
  auto gens = conn.delta.derivation().generators();
  LieBasis lb(gens);
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    TwistedElement x(conn.basis, gens, t);
    for (size_t s = 1; s <= conn.basis.size(); ++s)
      x.comp(s) += random_lie(lb, 1 + trial % 2, trial % 2, rng);
    CHECK(D(D(x)).is_zero());
  }
}

TEST_CASE("twisted homology matches the derivation complex (sphere)") {
  WeightTruncation t(4);
  CInftyStructure ms(sphere_basis());
  FormalConnection conn = canonical_formal_connection(ms, t);
  DGAModel dga = formal_dga(ms);
  auto h1 = twisted_complex_homology(dga, conn, 1, std::nullopt, t);
  CHECK(h1.total_dim == 1);
  auto h2 = twisted_complex_homology(dga, conn, 2, std::nullopt, t);
  CHECK(h2.total_dim == 0);
  // weight w in the twisted complex corresponds to weight level w-1 of the
  // derivation complex
  auto dh = derivation_homology(conn.delta, 1, std::nullopt, t);
  for (const auto& blk : h1.blocks) {
    int lvl = blk.weight_lo - 1;
    size_t want = 0;
    for (const auto& db : dh.blocks)
      if (db.weight_lo == lvl) want = db.dim;
    if (lvl <= t.N - 2) CHECK(blk.dim == want);
  }
}

TEST_CASE("twisted homology matches the derivation complex (surface g=2)") {
  WeightTruncation t(4);
  CInftyStructure m = surface_cup(2);
  FormalConnection conn = canonical_formal_connection(m, t);
  DGAModel dga = formal_dga(m);
  auto tw = twisted_complex_homology(dga, conn, 1, std::nullopt, t);
  auto dh = derivation_homology(conn.delta, 1, std::nullopt, t);
  for (const auto& blk : tw.blocks) {
    int lvl = blk.weight_lo - 1;
    if (lvl < 0 || lvl > t.N - 2) continue;
    size_t want = 0;
    for (const auto& db : dh.blocks)
      if (db.weight_lo == lvl) want = db.dim;
    CHECK(blk.dim == want);
  }
}
