#include "doctest.h"

#include "atlas/lie_basis.hpp"
#include "atlas/linalg.hpp"
#include "test_util.hpp"

using namespace atlas;
using namespace atlas::testutil;

TEST_CASE("free Lie dimensions match the necklace formula, degree-0 generators") {
  for (long q : {1L, 2L, 3L}) {
    std::vector<Generator> gs;
    for (long i = 0; i < q; ++i) gs.push_back({"g" + std::to_string(i), 0});
    LieBasis lb(make_generators(gs));
    for (int w = 1; w <= 5; ++w) {
      CHECK(static_cast<long>(lb.dimension(w, 0)) == witt_dimension(q, w));
    }
  }
}

TEST_CASE("witt dimensions, spot values") {
  CHECK(witt_dimension(2, 1) == 2);
  CHECK(witt_dimension(2, 2) == 1);
  CHECK(witt_dimension(2, 3) == 2);
  CHECK(witt_dimension(2, 4) == 3);
  CHECK(witt_dimension(2, 5) == 6);
  CHECK(witt_dimension(2, 6) == 9);
  CHECK(witt_dimension(4, 6) == 670);
  CHECK(witt_dimension(3, 4) == 18);
}

TEST_CASE("bracket-closure basis equals kernel of the reduced coproduct") {
  // Independent oracle: the primitive subspace of each word block is the
  // kernel of the unshuffle coproduct matrix, computed by brute force.
  auto g = make_generators({{"x", 1}, {"y", 0}});
  LieBasis lb(g);
  for (int w = 2; w <= 4; ++w) {
    for (int d : lb.degrees_present(w)) {
      const auto& ws = lb.words(w, d);
      if (ws.empty()) continue;
      // coproduct output space: pairs of nonempty words
      std::map<std::pair<Word, Word>, size_t> out;
      std::vector<Vec> rows;
      for (const auto& word : ws) {
        TensorElement e(g);
        e.add_term(word, Scalar(1));
        auto cop = reduced_coproduct(e);
        for (const auto& [pq, c] : cop.terms) out.emplace(pq, out.size());
        (void)cop;
      }
      MatQ m(out.size(), ws.size());
      for (size_t j = 0; j < ws.size(); ++j) {
        TensorElement e(g);
        e.add_term(ws[j], Scalar(1));
        for (const auto& [pq, c] : reduced_coproduct(e).terms)
          m.at(out.at(pq), j) = c;
      }
      auto kernel = m.kernel_basis();
      CHECK(kernel.size() == lb.dimension(w, d));
      std::vector<Vec> basis_vecs;
      for (const auto& b : lb.component(w, d)) basis_vecs.push_back(lb.word_vector(b, w, d));
      CHECK(same_span(kernel, basis_vecs, ws.size()));
    }
  }
}

TEST_CASE("lie components are primitive and coordinates round trip") {
  auto g = surface_generators(2);
  LieBasis lb(g);
  for (int w = 1; w <= 3; ++w)
    for (int d : lb.degrees_present(w)) {
      lb.verify_component(w, d);
      size_t n = lb.dimension(w, d);
      if (n == 0) continue;
      Vec coords(n, Scalar(0));
      for (size_t i = 0; i < n; ++i) coords[i] = Scalar(static_cast<long>(i) + 1, 3);
      TensorElement e = lb.from_coordinates(coords, w, d);
      auto back = lb.coordinates(e, w, d);
      REQUIRE(back.has_value());
      CHECK(*back == coords);
    }
}

TEST_CASE("component basis op validates weight against truncation") {
  auto g = two_deg0();
  WeightTruncation t(3);
  CHECK_THROWS_AS(lie_component_basis(g, 4, std::nullopt, t), InvalidInput);
  auto res = lie_component_basis(g, 3, std::nullopt, t);
  CHECK(res.dimension == 2);  // witt(2,3)
}
