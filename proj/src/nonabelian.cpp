#include "atlas/nonabelian.hpp"

#include <algorithm>

namespace atlas {

namespace {

FilteredAutomorphism conj(const FilteredAutomorphism& a, const FilteredAutomorphism& x) {
  return compose(compose(a, x), a.inverse());
}

FilteredAutomorphism value_on(const GroupCochain& c, const FilteredGroupLocalSystem& g,
                              const SimplexRef& s) {
  if (s.total_dim() != c.degree) throw InvalidInput("group cochain degree mismatch");
  if (s.degenerate())
    return FilteredAutomorphism(g.delta.derivation().generators(), g.trunc);
  return c.values.at(s.index);
}

void check_values(const GroupCochain& c, const FiniteSimplicialSet& k,
                  const FilteredGroupLocalSystem& g) {
  if (c.values.size() != k.count(c.degree))
    throw InvalidInput("one value per nondegenerate simplex is required");
  for (const auto& v : c.values) {
    v.validate();
    if (!v.is_pro_unipotent())
      throw InvalidInput("group cochain values must lie in the level-1 filtration subgroup");
  }
}

}  // namespace

FilteredAutomorphism FilteredGroupLocalSystem::edge_aut(const SimplexRef& edge) const {
  if (edge.total_dim() != 1) throw InvalidInput("edge_aut expects an edge");
  if (edge.degenerate())
    return FilteredAutomorphism(delta.derivation().generators(), trunc);
  return edge_value.at(edge.index);
}

void validate_group_system(const FiniteSimplicialSet& k, const FilteredGroupLocalSystem& g) {
  if (g.edge_value.size() != k.count(1))
    throw InvalidInput("one automorphism per nondegenerate edge is required");
  for (const auto& a : g.edge_value) {
    a.validate();
    if (g.quotient_by_inner && !a.commutes_with(g.delta))
      throw InvalidInput("edge automorphisms must commute with the differential");
  }
  for (size_t s = 0; s < k.count(2); ++s) {
    FilteredAutomorphism lhs = g.edge_aut(k.stored_face(2, s, 1));
    FilteredAutomorphism rhs =
        compose(g.edge_aut(k.stored_face(2, s, 0)), g.edge_aut(k.stored_face(2, s, 2)));
    if (!(lhs == rhs))
      throw InvalidInput("group system is not functorial around " + k.name(2, s));
  }
}

GroupCochain constant_group_cochain(const FiniteSimplicialSet& k,
                                    const FilteredGroupLocalSystem& g, int degree) {
  GroupCochain c;
  c.degree = degree;
  c.values.assign(k.count(degree),
                  FilteredAutomorphism(g.delta.derivation().generators(), g.trunc));
  return c;
}

GroupCochain nonabelian_delta(const GroupCochain& c, const FilteredGroupLocalSystem& g,
                              const FiniteSimplicialSet& k) {
  if (c.degree != 1) throw InvalidInput("nonabelian_delta expects a degree-1 cochain");
  check_values(c, k, g);
  GroupCochain out = constant_group_cochain(k, g, 2);
  for (size_t s = 0; s < k.count(2); ++s) {
    FilteredAutomorphism a_inv = g.edge_aut(k.stored_face(2, s, 2)).inverse();
    FilteredAutomorphism twisted = conj(a_inv, value_on(c, g, k.stored_face(2, s, 0)));
    out.values[s] = compose(compose(twisted, value_on(c, g, k.stored_face(2, s, 1)).inverse()),
                            value_on(c, g, k.stored_face(2, s, 2)));
  }
  return out;
}

GroupCochain phi_action(const GroupCochain& f, const GroupCochain& c,
                        const FilteredGroupLocalSystem& g, const FiniteSimplicialSet& k) {
  if (f.degree != 0 || c.degree != 1)
    throw InvalidInput("phi_action expects a vertex cochain and an edge cochain");
  check_values(f, k, g);
  check_values(c, k, g);
  GroupCochain out = c;
  for (size_t e = 0; e < k.count(1); ++e) {
    auto [start, end] = k.edge_endpoints({1, e, {}});
    FilteredAutomorphism tail =
        conj(g.edge_value[e].inverse(), f.values.at(end).inverse());
    out.values[e] = compose(compose(f.values.at(start), c.values[e]), tail);
  }
  return out;
}

GroupCochain psi_action(const GroupCochain& f, const GroupCochain& d,
                        const FilteredGroupLocalSystem& g, const FiniteSimplicialSet& k) {
  if (f.degree != 0 || d.degree != 2)
    throw InvalidInput("psi_action expects a vertex cochain and a 2-simplex cochain");
  check_values(f, k, g);
  check_values(d, k, g);
  GroupCochain out = d;
  for (size_t s = 0; s < k.count(2); ++s) {
    const SimplexRef& a = k.stored_face(2, s, 2);
    size_t x1 = k.edge_endpoints(a).second;
    FilteredAutomorphism u = conj(g.edge_aut(a).inverse(), f.values.at(x1));
    out.values[s] = conj(u, d.values[s]);
  }
  return out;
}

Derivation conjugate_derivation(const FilteredAutomorphism& a, const Derivation& d) {
  auto gens = d.generators();
  FilteredAutomorphism a_inv = a.inverse();
  Derivation out(gens, d.degree(), d.trunc());
  for (size_t i = 0; i < gens->size(); ++i)
    out.set_image(i, a.apply(d.apply(a_inv.image(i))));
  return out;
}

GradedPiece graded_piece(const FiniteSimplicialSet& k, const FilteredGroupLocalSystem& g,
                         int level) {
  if (level < 1) throw InvalidInput("graded level must be at least 1");
  GradedPiece p;
  p.level = level;
  p.space = std::make_shared<DerivationSpace>(g.delta.derivation().generators(), g.trunc);
  if (g.quotient_by_inner) {
    Derivation dgr = g.delta.derivation().weight_component(1);
    size_t inner_dim = p.space->block_dim(1, level - 1);
    for (size_t j = 0; j < inner_dim; ++j) {
      Derivation gen = p.space->basis_element(1, level - 1, j);
      p.inner_gens.push_back(gen);
      p.inner_images.push_back(
          p.space->block_coordinates(derivation_bracket(dgr, gen), level));
    }
    if (level <= g.trunc.N - 2) {
      auto rep = derivation_homology(ChenDifferential(dgr), 0,
                                     std::make_pair(level, level), g.trunc);
      p.basis = rep.blocks.front().representatives;
    } else {
      // top level of the truncation: the cycle condition is vacuous, the
      // fiber is the full block modulo the inner directions
      size_t dim = p.space->block_dim(0, level);
      RowSpan span(dim);
      for (const auto& v : p.inner_images) span.insert(v);
      for (size_t j = 0; j < dim; ++j) {
        Derivation e = p.space->basis_element(0, level, j);
        if (span.insert(p.space->block_coordinates(e, level))) p.basis.push_back(e);
      }
    }
  } else {
    size_t dim = p.space->block_dim(0, level);
    for (size_t j = 0; j < dim; ++j) p.basis.push_back(p.space->basis_element(0, level, j));
  }
  size_t fib = p.basis.size();
  p.system.fiber_dim.assign(k.count(0), fib);
  for (size_t e = 0; e < k.count(1); ++e) {
    MatQ a(fib, fib);
    for (size_t j = 0; j < fib; ++j) {
      Vec col = piece_coordinates(p, conjugate_derivation(g.edge_value[e], p.basis[j]));
      for (size_t r = 0; r < fib; ++r) a.at(r, j) = col[r];
    }
    p.system.edge_map.push_back(std::move(a));
  }
  return p;
}

Vec piece_coordinates(const GradedPiece& p, const Derivation& d) {
  Vec v = p.space->block_coordinates(d, p.level);
  if (p.inner_images.empty() && p.basis.size() == v.size()) {
    // full block: the basis is the block basis itself
    bool standard = true;
    for (size_t j = 0; j < p.basis.size() && standard; ++j) {
      Vec bj = p.space->block_coordinates(p.basis[j], p.level);
      for (size_t r = 0; r < bj.size(); ++r)
        if (bj[r] != Scalar(r == j ? 1 : 0)) { standard = false; break; }
    }
    if (standard) return v;
  }
  size_t cols = p.inner_images.size() + p.basis.size();
  MatQ mix(v.size(), cols);
  for (size_t j = 0; j < p.inner_images.size(); ++j)
    for (size_t r = 0; r < v.size(); ++r) mix.at(r, j) = p.inner_images[j][r];
  for (size_t j = 0; j < p.basis.size(); ++j) {
    Vec bj = p.space->block_coordinates(p.basis[j], p.level);
    for (size_t r = 0; r < v.size(); ++r) mix.at(r, p.inner_images.size() + j) = bj[r];
  }
  auto z = mix.solve(v);
  if (!z)
    throw InvalidInput("level component does not define a class at level " +
                       std::to_string(p.level));
  return Vec(z->begin() + p.inner_images.size(), z->end());
}

Cochain graded_projection(const GroupCochain& c, const FiniteSimplicialSet& k,
                          const GradedPiece& piece) {
  if (c.degree != 1) throw InvalidInput("graded_projection expects a degree-1 cochain");
  Cochain out = zero_cochain(k, piece.system, 1);
  for (size_t e = 0; e < k.count(1); ++e)
    out.values[e] = piece_coordinates(piece, log_automorphism(c.values[e]));
  return out;
}

StepwiseResult stepwise_obstruction(const GroupCochain& c, const FilteredGroupLocalSystem& g,
                                    const FiniteSimplicialSet& k) {
  validate_group_system(k, g);
  if (c.degree != 1) throw InvalidInput("stepwise_obstruction expects a degree-1 cochain");
  check_values(c, k, g);
  if (g.quotient_by_inner)
    for (const auto& v : c.values)
      if (!v.commutes_with(g.delta))
        throw InvalidInput("values must commute with the differential");
  if (!g.quotient_by_inner && k.count(2) > 0) {
    GroupCochain dc = nonabelian_delta(c, g, k);
    FilteredAutomorphism id(g.delta.derivation().generators(), g.trunc);
    for (size_t s = 0; s < dc.values.size(); ++s)
      if (!(dc.values[s] == id))
        throw InvalidInput("input is not a cocycle: coboundary is nontrivial on " +
                           k.name(2, s));
  }

  StepwiseResult res;
  GroupCochain cur = c;
  res.gauge.assign(k.count(0),
                   FilteredAutomorphism(g.delta.derivation().generators(), g.trunc));
  for (int level = 1; level <= g.trunc.N - 1; ++level) {
    GradedPiece piece = graded_piece(k, g, level);
    res.decided_through = level;
    if (piece.basis.empty() && piece.inner_gens.empty()) continue;
    Cochain proj = graded_projection(cur, k, piece);
    ClassReduction red = class_reduce(proj, piece.system, k);
    if (!red.is_cocycle)
      throw InvalidInput("level projection is not a cocycle on " + red.failing_simplex);
    if (!red.trivial) {
      res.trivial = false;
      res.level = level;
      res.class_coords = red.class_coords;
      res.class_basis = red.basis;
      res.fiber_basis = piece.basis;
      return res;
    }
    if (!piece.basis.empty()) {
      // gauge by f = exp(certificate) to push the level component into the
      // inner directions (or to zero in full mode)
      GroupCochain f = constant_group_cochain(k, g, 0);
      const Cochain& b = *red.certificate;
      for (size_t v = 0; v < k.count(0); ++v) {
        Derivation d(g.delta.derivation().generators(), 0, g.trunc);
        for (size_t j = 0; j < piece.basis.size(); ++j)
          if (b.values[v][j] != 0) d += b.values[v][j] * piece.basis[j];
        f.values[v] = exp_derivation(d);
        res.gauge[v] = compose(f.values[v], res.gauge[v]);
      }
      cur = phi_action(f, cur, g, k);
    }
    if (g.quotient_by_inner) {
      // choose inner representatives killing the remaining level component
      for (size_t e = 0; e < k.count(1); ++e) {
        Vec v = piece.space->block_coordinates(log_automorphism(cur.values[e]), level);
        MatQ mix(v.size(), piece.inner_images.size());
        for (size_t j = 0; j < piece.inner_images.size(); ++j)
          for (size_t r = 0; r < v.size(); ++r) mix.at(r, j) = piece.inner_images[j][r];
        auto z = mix.solve(v);
        if (!z)
          throw InvalidInput("internal error: residual level component is not inner");
        Derivation pgen(g.delta.derivation().generators(), 1, g.trunc);
        for (size_t j = 0; j < piece.inner_gens.size(); ++j)
          if ((*z)[j] != 0) pgen += (*z)[j] * piece.inner_gens[j];
        Derivation inner = derivation_bracket(g.delta.derivation(), pgen);
        cur.values[e] = compose(exp_derivation(Scalar(-1) * inner), cur.values[e]);
      }
    }
  }
  FilteredAutomorphism id(g.delta.derivation().generators(), g.trunc);
  for (const auto& v : cur.values)
    if (!(v == id)) throw InvalidInput("internal error: residual value after all levels");
  return res;
}

}  // namespace atlas
