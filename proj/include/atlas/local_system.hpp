#pragma once

#include <vector>

#include "atlas/linalg.hpp"
#include "atlas/simplicial.hpp"

namespace atlas {

/// Local system of finite-dimensional vector spaces on a finite simplicial
/// set: one fiber per vertex, one invertible matrix per nondegenerate edge
/// mapping fiber(start) -> fiber(end); degenerate edges act as the
/// identity. Optional vertex trivializations map each fiber to a common
/// reference fiber; `holonomy` lists generators of the structure group on
/// the reference fiber.
struct LocalSystem {
  std::vector<size_t> fiber_dim;       // per vertex
  std::vector<MatQ> edge_map;          // per nondegenerate edge
  std::vector<MatQ> trivialization;    // per vertex (empty: identity, all fibers equal)
  std::vector<MatQ> holonomy;          // generators on the reference fiber

  bool has_trivialization() const { return !trivialization.empty(); }
};

/// Rank-d constant system with identity edge maps.
LocalSystem trivial_system(const FiniteSimplicialSet& k, size_t d);

/// Matrix of an edge (possibly degenerate): fiber(start) -> fiber(end).
MatQ edge_matrix(const FiniteSimplicialSet& k, const LocalSystem& m, const SimplexRef& edge);

/// Checks shapes, invertibility, and functoriality around every
/// nondegenerate 2-simplex: M(d1 s) = M(d0 s) M(d2 s).
void validate_local_system(const FiniteSimplicialSet& k, const LocalSystem& m);

}  // namespace atlas
