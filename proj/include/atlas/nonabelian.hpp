#pragma once

#include <memory>
#include <vector>

#include "atlas/automorphism.hpp"
#include "atlas/cochain.hpp"

namespace atlas {

/// Local system of filtered automorphism groups: every vertex carries the
/// same truncated group (pro-unipotent automorphisms over a common
/// differential), and each nondegenerate edge acts by conjugation by the
/// supplied automorphism; degenerate edges act trivially.
///
/// When `quotient_by_inner` is set the values are read modulo the inner
/// subgroup generated by exponentials of ad(delta)-exact degree-0
/// derivations, and the graded pieces are the degree-0 homology of delta;
/// otherwise the graded pieces are the full degree-0 derivation blocks.
struct FilteredGroupLocalSystem {
  ChenDifferential delta;
  WeightTruncation trunc;
  std::vector<FilteredAutomorphism> edge_value;  // per nondegenerate edge
  bool quotient_by_inner = false;

  FilteredGroupLocalSystem(ChenDifferential d, WeightTruncation t)
      : delta(std::move(d)), trunc(t) {}

  /// Edge automorphism, identity on degenerate edges.
  FilteredAutomorphism edge_aut(const SimplexRef& edge) const;
};

/// Checks invertibility of edge values and exact functoriality
/// G(d1 s) = G(d0 s) G(d2 s) around every nondegenerate 2-simplex.
void validate_group_system(const FiniteSimplicialSet& k, const FilteredGroupLocalSystem& g);

/// Group cochain with pro-unipotent automorphism values.
struct GroupCochain {
  int degree = 0;
  std::vector<FilteredAutomorphism> values;  // per nondegenerate simplex
};

/// Cochain with every value the identity.
GroupCochain constant_group_cochain(const FiniteSimplicialSet& k,
                                    const FilteredGroupLocalSystem& g, int degree);

/// Non-abelian coboundary of a degree-1 cochain:
///   (dc)(s) = (G(d2 s)^{-1} . c(d0 s)) c(d1 s)^{-1} c(d2 s)
/// where g . x = g x g^{-1} along the edge action.
GroupCochain nonabelian_delta(const GroupCochain& c, const FilteredGroupLocalSystem& g,
                              const FiniteSimplicialSet& k);

/// Affine gauge action of a degree-0 cochain f on degree-1 cochains:
///   (phi(f)c)(e) = f(d1 e) c(e) (G(e)^{-1} . f(d0 e)^{-1}).
GroupCochain phi_action(const GroupCochain& f, const GroupCochain& c,
                        const FilteredGroupLocalSystem& g, const FiniteSimplicialSet& k);

/// Companion action on degree-2 cochains:
///   (psi(f)d)(s) = Ad(G(d2 s)^{-1} . f(d0 d2 s))(d(s)),
/// so that delta(phi(f)c) = psi(f) delta(c).
GroupCochain psi_action(const GroupCochain& f, const GroupCochain& d,
                        const FilteredGroupLocalSystem& g, const FiniteSimplicialSet& k);

/// Conjugation of a derivation by an automorphism: a d a^{-1}.
Derivation conjugate_derivation(const FilteredAutomorphism& a, const Derivation& d);

/// Abelian local system carried by a graded level of g, with the fiber
/// basis spelled out as derivations.
struct GradedPiece {
  int level = 1;
  LocalSystem system;
  std::vector<Derivation> basis;       // fiber basis
  std::vector<Derivation> inner_gens;  // quotient mode: degree-1 generators P
  std::vector<Vec> inner_images;       // block coordinates of [gr(delta), P]
  std::shared_ptr<DerivationSpace> space;
};

GradedPiece graded_piece(const FiniteSimplicialSet& k, const FilteredGroupLocalSystem& g,
                         int level);

/// Fiber coordinates of the level component of a degree-0 derivation
/// (modulo the inner directions in quotient mode).
Vec piece_coordinates(const GradedPiece& p, const Derivation& d);

/// Level coordinates of a degree-1 group cochain in the graded piece.
Cochain graded_projection(const GroupCochain& c, const FiniteSimplicialSet& k,
                          const GradedPiece& piece);

struct StepwiseResult {
  bool trivial = true;
  int level = -1;  // first level with a nonvanishing class
  Vec class_coords;
  std::vector<Cochain> class_basis;    // abelian cohomology representatives
  std::vector<Derivation> fiber_basis; // fiber basis at that level
  /// Accumulated degree-0 gauge (per vertex) when fully trivial; inner
  /// representative changes in quotient mode are not recorded.
  std::vector<FilteredAutomorphism> gauge;
  int decided_through = 0;
};

/// Filtration-stepwise triviality decision for a non-abelian degree-1
/// cocycle: project to each graded level, reduce the abelian class, gauge
/// the cocycle one filtration step deeper when the class vanishes.
StepwiseResult stepwise_obstruction(const GroupCochain& c, const FilteredGroupLocalSystem& g,
                                    const FiniteSimplicialSet& k);

}  // namespace atlas
