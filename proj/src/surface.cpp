#include "atlas/surface.hpp"

#include "atlas/simplicial.hpp"

namespace atlas {

SurfaceModel make_surface_model(int genus, WeightTruncation trunc) {
  if (genus < 2) throw InvalidInput("surface model requires genus >= 2");
  if (trunc.N < 3) throw InvalidInput("surface model requires truncation N >= 3");
  std::vector<Generator> gens;
  for (int i = 1; i <= genus; ++i) {
    gens.push_back({"x" + std::to_string(i), 0});
    gens.push_back({"y" + std::to_string(i), 0});
  }
  gens.push_back({"v", 1});
  GeneratorSetPtr gptr = make_generators(std::move(gens));
  TensorElement omega(gptr);
  for (int i = 0; i < genus; ++i) {
    TensorElement xi = make_generator_element(gptr, 2 * i);
    TensorElement yi = make_generator_element(gptr, 2 * i + 1);
    omega += lie_bracket(xi, yi, trunc);
  }
  Derivation d(gptr, -1, trunc);
  d.set_image(gptr->size() - 1, omega);
  return SurfaceModel{genus, trunc, gptr, omega, ChenDifferential(std::move(d))};
}

Scalar symplectic_pairing(int genus, size_t a, size_t b) {
  if (a >= size_t(2 * genus) || b >= size_t(2 * genus))
    throw InvalidInput("symplectic pairing index out of range");
  if (a % 2 == 0 && b == a + 1) return Scalar(1);
  if (b % 2 == 0 && a == b + 1) return Scalar(-1);
  return Scalar(0);
}

namespace {

/// The cycle with images <w,a>[b,c] + <w,b>[c,a] + <w,c>[a,b] on W0 and
/// zero on v; it annihilates omega, so it commutes with the differential.
Derivation wedge_cycle(const SurfaceModel& model, const std::array<size_t, 3>& t) {
  size_t m = size_t(2 * model.genus);
  Derivation d(model.gens, 0, model.trunc);
  auto gen = [&](size_t i) { return make_generator_element(model.gens, i); };
  for (size_t j = 0; j < m; ++j) {
    TensorElement img(model.gens);
    img += symplectic_pairing(model.genus, j, t[0]) *
           lie_bracket(gen(t[1]), gen(t[2]), model.trunc);
    img += symplectic_pairing(model.genus, j, t[1]) *
           lie_bracket(gen(t[2]), gen(t[0]), model.trunc);
    img += symplectic_pairing(model.genus, j, t[2]) *
           lie_bracket(gen(t[0]), gen(t[1]), model.trunc);
    if (!img.is_zero()) d.set_image(j, img);
  }
  return d;
}

/// Columns spanning the exact directions of the level-1 degree-0 block:
/// brackets of the differential with the degree-1 level-0 derivations.
std::vector<Vec> exact_columns(const SurfaceModel& model, DerivationSpace& sp) {
  std::vector<Vec> cols;
  for (size_t k = 0; k < sp.block_dim(1, 0); ++k) {
    Derivation p = sp.basis_element(1, 0, k);
    cols.push_back(sp.block_coordinates(derivation_bracket(model.delta.derivation(), p), 1));
  }
  return cols;
}

MatQ columns_to_matrix(const std::vector<Vec>& cols, size_t rows) {
  MatQ a(rows, cols.size());
  for (size_t c = 0; c < cols.size(); ++c)
    for (size_t r = 0; r < rows; ++r) a.at(r, c) = cols[c][r];
  return a;
}

Vec negated(Vec v) {
  for (auto& x : v) x = -x;
  return v;
}

}  // namespace

Vec h01_class_coords(const SurfaceModel& model, const Derivation& d) {
  DerivationSpace sp(model.gens, model.trunc);
  std::vector<Vec> cols = exact_columns(model, sp);
  size_t n_exact = cols.size();
  auto rep = derivation_homology(model.delta, 0, std::make_pair(1, 1), model.trunc);
  const auto& reps = rep.blocks.at(0).representatives;
  for (const auto& r : reps) cols.push_back(sp.block_coordinates(r, 1));
  size_t rows = sp.block_dim(0, 1);
  auto sol = columns_to_matrix(cols, rows).solve(sp.block_coordinates(d.weight_component(1), 1));
  if (!sol)
    throw InvalidInput("derivation is not a cycle at filtration level 1");
  return Vec(sol->begin() + n_exact, sol->end());
}

MatQ wedge3_matrix(const MatQ& a, const std::vector<std::array<size_t, 3>>& wedge_basis) {
  size_t n = wedge_basis.size();
  MatQ out(n, n);
  for (size_t col = 0; col < n; ++col) {
    const auto& s = wedge_basis[col];
    for (size_t row = 0; row < n; ++row) {
      const auto& t = wedge_basis[row];
      // 3x3 minor det of rows t, columns s
      Scalar det(0);
      static const int perm[6][4] = {{0, 1, 2, 1}, {1, 2, 0, 1}, {2, 0, 1, 1},
                                     {2, 1, 0, -1}, {1, 0, 2, -1}, {0, 2, 1, -1}};
      for (const auto& p : perm)
        det += Scalar(p[3]) * a.at(t[0], s[p[0]]) * a.at(t[1], s[p[1]]) * a.at(t[2], s[p[2]]);
      out.at(row, col) = det;
    }
  }
  return out;
}

SurfaceH01Report surface_h01(int genus, const WeightTruncation& trunc) {
  SurfaceModel model = make_surface_model(genus, trunc);
  SurfaceH01Report rep;
  size_t m = size_t(2 * genus);
  rep.dim_expected = m * (m - 1) * (m - 2) / 6;

  auto hom = derivation_homology(model.delta, 0, std::make_pair(1, 1), trunc);
  rep.dim_homology = hom.total_dim;

  // Brute force on the quotient Lie algebra L(W0)/(omega): maps W0 -> L2
  // sending omega into the degree-3 part of the ideal, modulo maps into
  // the ideal itself.
  {
    LieBasis lie(model.gens);
    size_t d2 = lie.dimension(2, 0);
    const auto& l2 = lie.component(2, 0);
    std::vector<Vec> cols;
    for (size_t j = 0; j < m; ++j)
      for (size_t k = 0; k < d2; ++k) {
        Derivation d(model.gens, 0, trunc);
        d.set_image(j, l2[k]);
        cols.push_back(lie.word_vector(d.apply(model.omega), 3, 0));
      }
    size_t n_vars = cols.size();
    std::vector<Vec> bcols;
    for (size_t j = 0; j < m; ++j) {
      TensorElement wj = make_generator_element(model.gens, j);
      bcols.push_back(lie.word_vector(lie_bracket(model.omega, wj, trunc), 3, 0));
    }
    size_t rows = cols[0].size();
    for (auto& b : bcols) cols.push_back(std::move(b));
    size_t ker_tb = columns_to_matrix(cols, rows).kernel_basis().size();
    std::vector<Vec> bonly(cols.begin() + n_vars, cols.end());
    size_t ker_b = columns_to_matrix(bonly, rows).kernel_basis().size();
    size_t dim_solutions = ker_tb - ker_b;
    rep.dim_quotient = dim_solutions - m;  // minus the maps into the ideal
  }
  rep.dims_agree =
      rep.dim_homology == rep.dim_expected && rep.dim_quotient == rep.dim_expected;

  // [v, W0] coincides with the images of omega under the degree-1 level-0
  // derivations, inside the weight-2 degree-1 component.
  {
    LieBasis lie(model.gens);
    TensorElement v = make_generator_element(model.gens, model.v_index());
    std::vector<Vec> lhs, rhs;
    for (size_t j = 0; j < m; ++j) {
      TensorElement wj = make_generator_element(model.gens, j);
      lhs.push_back(lie.word_vector(lie_bracket(v, wj, trunc), 2, 1));
    }
    DerivationSpace sp(model.gens, trunc);
    for (size_t k = 0; k < sp.block_dim(1, 0); ++k)
      rhs.push_back(lie.word_vector(sp.basis_element(1, 0, k).apply(model.omega), 2, 1));
    rep.lemma_ok = same_span(lhs, rhs, lhs.empty() ? 0 : lhs[0].size());
  }

  // Wedge-coordinate identification of the level-1 degree-0 homology.
  rep.iso.genus = genus;
  for (size_t a = 0; a + 2 < m; ++a)
    for (size_t b = a + 1; b + 1 < m; ++b)
      for (size_t c = b + 1; c < m; ++c) rep.iso.wedge_basis.push_back({a, b, c});
  rep.iso.h01_basis = hom.blocks.at(0).representatives;
  {
    DerivationSpace sp(model.gens, trunc);
    size_t rows = sp.block_dim(0, 1);
    std::vector<Vec> cols;
    for (const auto& t : rep.iso.wedge_basis)
      cols.push_back(sp.block_coordinates(wedge_cycle(model, t), 1));
    size_t n_wedge = cols.size();
    for (auto& e : exact_columns(model, sp)) cols.push_back(std::move(e));
    MatQ a = columns_to_matrix(cols, rows);
    rep.iso.matrix = MatQ(n_wedge, rep.iso.h01_basis.size());
    for (size_t k = 0; k < rep.iso.h01_basis.size(); ++k) {
      auto sol = a.solve(sp.block_coordinates(rep.iso.h01_basis[k], 1));
      if (!sol)
        throw InvalidInput("homology representative escapes the wedge cycles");
      for (size_t t = 0; t < n_wedge; ++t) rep.iso.matrix.at(t, k) = (*sol)[t];
    }
    if (rep.iso.matrix.rows() != rep.iso.matrix.cols() || !rep.iso.matrix.inverse())
      throw InvalidInput("wedge identification is not invertible");
  }

  // Equivariance spot check on symplectic transvections w -> w + <w,u>u.
  rep.sp_equivariant = true;
  std::vector<Vec> us;
  for (size_t j = 0; j < m; ++j) {
    Vec u(m, Scalar(0));
    u[j] = Scalar(1);
    us.push_back(u);
  }
  {
    Vec u(m, Scalar(0));
    u[0] = Scalar(1);
    u[3] = Scalar(1);  // mixes the first two handles
    us.push_back(u);
  }
  for (const auto& u : us) {
    MatQ a = MatQ::identity(m);
    for (size_t j = 0; j < m; ++j) {
      Scalar pair(0);
      for (size_t i = 0; i < m; ++i)
        if (u[i] != Scalar(0)) pair += symplectic_pairing(genus, j, i) * u[i];
      for (size_t i = 0; i < m; ++i) a.at(i, j) += pair * u[i];
    }
    MatQ full = MatQ::identity(m + 1);
    for (size_t r = 0; r < m; ++r)
      for (size_t c = 0; c < m; ++c) full.at(r, c) = a.at(r, c);
    LinearIso iso(model.gens, full);
    if (!(transport(iso, model.delta).derivation() == model.delta.derivation())) {
      rep.sp_equivariant = false;
      break;
    }
    MatQ w3 = wedge3_matrix(a, rep.iso.wedge_basis);
    for (size_t k = 0; k < rep.iso.h01_basis.size() && rep.sp_equivariant; ++k) {
      Vec lhs = rep.iso.apply(h01_class_coords(model, transport(iso, rep.iso.h01_basis[k])));
      Vec col(rep.iso.matrix.rows());
      for (size_t t = 0; t < col.size(); ++t) col[t] = rep.iso.matrix.at(t, k);
      if (!(lhs == w3.apply(col))) rep.sp_equivariant = false;
    }
    if (!rep.sp_equivariant) break;
  }
  return rep;
}

Vec johnson_tau1(const FilteredAutomorphism& phi, const SurfaceModel& model,
                 const MoritaIso& iso) {
  if (!phi.is_pro_unipotent())
    throw InvalidInput("johnson_tau1 requires a pro-unipotent automorphism");
  if (!phi.commutes_with(model.delta))
    throw InvalidInput("johnson_tau1 requires compatibility with the differential");
  Derivation d1 = log_automorphism(phi).weight_component(1);
  return iso.apply(h01_class_coords(model, d1));
}

MappingTorusReport mapping_torus_obstruction(const FilteredAutomorphism& phi,
                                             const SurfaceModel& model,
                                             const MoritaIso& iso) {
  MappingTorusReport rep;
  rep.minus_tau1 = negated(johnson_tau1(phi, model, iso));

  FiniteSimplicialSet circle = circle_model();
  FilteredGroupLocalSystem g(model.delta, model.trunc);
  g.quotient_by_inner = true;
  g.edge_value = {phi};
  GroupCochain c = constant_group_cochain(circle, g, 1);
  c.values[0] = phi.inverse();
  rep.stepwise = stepwise_obstruction(c, g, circle);

  rep.level1_wedge = Vec(iso.wedge_basis.size(), Scalar(0));
  if (!rep.stepwise.trivial && rep.stepwise.level == 1) {
    // value of the class representative on the edge, in fiber coordinates
    Vec fib(rep.stepwise.fiber_basis.size(), Scalar(0));
    for (size_t j = 0; j < rep.stepwise.class_coords.size(); ++j) {
      const Vec& val = rep.stepwise.class_basis[j].values.at(0);
      for (size_t i = 0; i < fib.size(); ++i)
        fib[i] += rep.stepwise.class_coords[j] * val[i];
    }
    Derivation d(model.gens, 0, model.trunc);
    for (size_t i = 0; i < fib.size(); ++i) d += fib[i] * rep.stepwise.fiber_basis[i];
    rep.level1_wedge = iso.apply(h01_class_coords(model, d));
  }
  rep.matches_minus_tau1 = rep.level1_wedge == rep.minus_tau1;
  return rep;
}

}  // namespace atlas
