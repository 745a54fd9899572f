#include "doctest.h"

#include "atlas/automorphism.hpp"
#include "atlas/homology.hpp"
#include "test_util.hpp"

using namespace atlas;
using namespace atlas::testutil;

TEST_CASE("zero differential: homology equals the full block dimension") {
  WeightTruncation t(5);
  auto g = make_generators({{"x", 0}, {"y", 1}});
  ChenDifferential zero{Derivation(g, -1, t)};
  DerivationSpace sp(g, t);
  for (int n : {0, 1}) {
    auto rep = derivation_homology(zero, n, std::nullopt, t);
    CHECK(rep.pure_weight);
    for (const auto& blk : rep.blocks) {
      CHECK(blk.boundary_dim == 0);
      CHECK(blk.dim == sp.block_dim(n, blk.weight_lo));
    }
  }
}

TEST_CASE("one odd generator: the classical two-dimensional derivation algebra") {
  // LW over a single degree-1 generator x is spanned by x and [x,x];
  // derivations: x d/dx in degree 0 and [x,x] d/dx in degree 1.
  WeightTruncation t(4);
  auto g = make_generators({{"x", 1}});
  ChenDifferential zero{Derivation(g, -1, t)};
  auto h0 = derivation_homology(zero, 0, std::nullopt, t);
  auto h1 = derivation_homology(zero, 1, std::nullopt, t);
  DerivationSpace sp(g, t);
  CHECK(sp.block_dim(0, 0) == 1);   // x d/dx
  CHECK(sp.block_dim(1, 1) == 1);   // [x,x] d/dx
  CHECK(sp.block_dim(0, 1) == 0);
  CHECK(sp.block_dim(1, 0) == 0);
  CHECK(h1.total_dim == 1);
  CHECK(h0.total_dim == 1);
}

TEST_CASE("surface differential: degree-0 level-1 homology has dimension C(2g,3)") {
  WeightTruncation t(4);
  for (int genus : {1, 2}) {
    auto g = surface_generators(genus);
    ChenDifferential delta{surface_delta(g, genus, t)};
    auto rep = derivation_homology(delta, 0, std::make_pair(1, 1), t);
    long n = 2 * genus;
    long expect = n * (n - 1) * (n - 2) / 6;
    CHECK(static_cast<long>(rep.total_dim) == expect);
    for (const auto& r : rep.blocks.front().representatives) {
      CHECK(derivation_bracket(delta.derivation(), r).is_zero());
    }
  }
}

TEST_CASE("windows beyond the truncation guard are rejected with the needed N") {
  WeightTruncation t(4);
  auto g = surface_generators(1);
  ChenDifferential delta{surface_delta(g, 1, t)};
  CHECK_NOTHROW(derivation_homology(delta, 0, std::make_pair(1, 2), t));
  CHECK_THROWS_WITH_AS(derivation_homology(delta, 0, std::make_pair(1, 3), t),
                       doctest::Contains("minimal sufficient N = 5"), InvalidInput);
}

TEST_CASE("mixed-weight differential reports a window, not single weights") {
  WeightTruncation t(5);
  auto g = surface_generators(2);
  Derivation delta = surface_delta(g, 2, t);
  // conjugate by exp(D) to get a mixed-weight differential with delta^2 = 0
  DerivationSpace sp(g, t);
  REQUIRE(sp.block_dim(0, 1) > 0);
  Derivation d = sp.basis_element(0, 1, 3);
  FilteredAutomorphism u = exp_derivation(d);
  FilteredAutomorphism u_inv = u.inverse();
  Derivation conj(g, -1, t);
  for (size_t i = 0; i < g->size(); ++i)
    conj.set_image(i, u.apply(delta.apply(u_inv.image(i))));
  ChenDifferential mixed{conj};
  if (mixed.pure_weight()) return;  // conjugation happened to preserve purity

  CHECK_THROWS_AS(derivation_homology(mixed, 0, std::make_pair(1, 1), t), InvalidInput);
  auto rep = derivation_homology(mixed, 0, std::nullopt, t);
  CHECK_FALSE(rep.pure_weight);
  CHECK(rep.blocks.size() == 1);

  // Conjugation by exp(D) preserves the weight filtration, so it induces an
  // isomorphism of the quotient complexes F_lo / F_{hi+1}; the window total
  // must match the same quotient-window computation for the pure delta.
  int lo = rep.window_lo, hi = rep.window_hi;
  auto window_total = [&](const Derivation& dd) {
    auto col_coords = [&](const Derivation& x, int n_deg, int w_lo, int w_hi) {
      Vec v;
      for (int i = w_lo; i <= w_hi; ++i) {
        Vec c = sp.block_coordinates(x, i);
        v.insert(v.end(), c.begin(), c.end());
      }
      return v;
    };
    size_t mid_total = 0;
    for (int i = lo; i <= hi; ++i) mid_total += sp.block_dim(0, i);
    size_t tgt_total = 0;
    for (int i = lo + 1; i <= hi; ++i) tgt_total += sp.block_dim(-1, i);
    MatQ out(tgt_total, mid_total);
    size_t col = 0;
    for (int i = lo; i <= hi; ++i)
      for (size_t k = 0; k < sp.block_dim(0, i); ++k, ++col) {
        Derivation img = derivation_bracket(dd, sp.basis_element(0, i, k));
        Vec v = col_coords(img, -1, lo + 1, hi);
        for (size_t r = 0; r < tgt_total; ++r) out.at(r, col) = v[r];
      }
    RowSpan image(mid_total);
    for (int j = 0; j <= hi - 1; ++j)
      for (size_t k = 0; k < sp.block_dim(1, j); ++k) {
        Derivation img = derivation_bracket(dd, sp.basis_element(1, j, k));
        image.insert(col_coords(img, 0, lo, hi));
      }
    return mid_total - out.rank() - image.dim();
  };
  CHECK(rep.total_dim == window_total(delta));
  CHECK(rep.total_dim == window_total(mixed.derivation()));
}

TEST_CASE("block coordinates round trip") {
  WeightTruncation t(4);
  auto g = surface_generators(1);
  DerivationSpace sp(g, t);
  for (int n : {0, 1})
    for (int i : {0, 1, 2}) {
      size_t dim = sp.block_dim(n, i);
      for (size_t k = 0; k < dim; ++k) {
        Derivation e = sp.basis_element(n, i, k);
        Vec v = sp.block_coordinates(e, i);
        CHECK(sp.from_block_coordinates(n, i, v) == e);
      }
    }
}
