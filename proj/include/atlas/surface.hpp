#pragma once

#include <array>

#include "atlas/automorphism.hpp"
#include "atlas/nonabelian.hpp"

namespace atlas {

/// Genus-g surface model: W0 = 2g degree-0 generators x1,y1,...,xg,yg,
/// one degree-1 generator v, differential v -> omega = sum [xi,yi].
struct SurfaceModel {
  int genus;
  WeightTruncation trunc;
  GeneratorSetPtr gens;   // x1,y1,...,xg,yg,v
  TensorElement omega;
  ChenDifferential delta;

  size_t v_index() const { return gens->size() - 1; }
};

/// genus >= 2 and N >= 3 are enforced.
SurfaceModel make_surface_model(int genus, WeightTruncation trunc = WeightTruncation(4));

/// Symplectic pairing of the standard basis: <xi,yi> = 1 = -<yi,xi>.
Scalar symplectic_pairing(int genus, size_t a, size_t b);

/// Identification of the degree-0 level-1 homology with the third wedge
/// power of W0, in the bases (homology representatives) x (ea^eb^ec).
struct MoritaIso {
  int genus = 2;
  std::vector<std::array<size_t, 3>> wedge_basis;  // ascending triples in W0
  std::vector<Derivation> h01_basis;               // homology representatives
  MatQ matrix;  // homology coordinates -> wedge coordinates
  Vec apply(const Vec& h01_coords) const { return matrix.apply(h01_coords); }
};

/// Coordinates of a degree-0 cycle's class in the homology basis at
/// level 1 (modulo the exact directions).
Vec h01_class_coords(const SurfaceModel& model, const Derivation& d);

/// Matrix of the third wedge power of a linear map on W0.
MatQ wedge3_matrix(const MatQ& a, const std::vector<std::array<size_t, 3>>& wedge_basis);

struct SurfaceH01Report {
  size_t dim_homology = 0;   // via the derivation complex
  size_t dim_quotient = 0;   // brute force on the quotient Lie algebra
  size_t dim_expected = 0;   // C(2g,3)
  bool dims_agree = false;
  bool lemma_ok = false;     // [v,W0] = {P(omega)} as subspaces
  MoritaIso iso;
  bool sp_equivariant = false;  // spot-checked on symplectic transvections
};

SurfaceH01Report surface_h01(int genus, const WeightTruncation& trunc);

/// First Johnson map: the level-1 class of phi (which must commute with
/// the differential and act trivially on W) in wedge coordinates.
Vec johnson_tau1(const FilteredAutomorphism& phi, const SurfaceModel& model,
                 const MoritaIso& iso);

struct MappingTorusReport {
  StepwiseResult stepwise;
  Vec level1_wedge;          // stepwise level-1 class through the identification
  Vec minus_tau1;
  bool matches_minus_tau1 = false;
};

/// Obstruction of the mapping torus of phi over the circle: the
/// non-abelian cocycle c(edge) = phi^{-1} in the quotient group system
/// with monodromy phi, reduced stepwise.
MappingTorusReport mapping_torus_obstruction(const FilteredAutomorphism& phi,
                                             const SurfaceModel& model, const MoritaIso& iso);

}  // namespace atlas
