#pragma once

#include <string>
#include <vector>

#include "atlas/scalar.hpp"

namespace atlas {

/// A simplex in normal form: a nondegenerate simplex of dimension `dim`
/// with a strictly descending degeneracy word applied on top, so the
/// total dimension is dim + degeneracies.size().
struct SimplexRef {
  int dim = 0;
  size_t index = 0;
  std::vector<int> degeneracies;  // s_{j1} s_{j2} ... with j1 > j2 > ...

  int total_dim() const { return dim + static_cast<int>(degeneracies.size()); }
  bool degenerate() const { return !degeneracies.empty(); }
  bool operator==(const SimplexRef& other) const {
    return dim == other.dim && index == other.index && degeneracies == other.degeneracies;
  }
};

/// Finite simplicial set encoded by its nondegenerate simplices; each face
/// of a nondegenerate simplex is a SimplexRef, so faces may be degenerate.
/// The simplicial identities on the encoded data are checked by validate().
class FiniteSimplicialSet {
 public:
  /// Adds a nondegenerate simplex; faces.size() must be dim+1 (empty for
  /// dim 0). Lower-dimensional targets must already exist. Returns the
  /// index within its dimension.
  size_t add_simplex(int dim, std::string name, std::vector<SimplexRef> faces = {});

  /// Largest dimension with a nondegenerate simplex (-1 if empty).
  int dimension() const { return static_cast<int>(names_.size()) - 1; }
  size_t count(int dim) const;
  const std::string& name(int dim, size_t index) const;
  /// Index by name within a dimension; throws if absent.
  size_t index_of(int dim, const std::string& name) const;

  /// Stored face of a nondegenerate simplex (dim >= 1, 0 <= i <= dim).
  const SimplexRef& stored_face(int dim, size_t index, int i) const;
  /// Face of an arbitrary simplex, normalizing the degeneracy word.
  SimplexRef face(const SimplexRef& x, int i) const;

  /// Leading vertex x0 = d1 d2 ... dn x of a nondegenerate simplex.
  size_t leading_vertex(int dim, size_t index) const;
  /// Leading edge x01 = d2 ... dn x of a nondegenerate simplex, dim >= 1.
  SimplexRef leading_edge(int dim, size_t index) const;

  /// Endpoints of an edge (possibly degenerate): (d1, d0) = (start, end).
  std::pair<size_t, size_t> edge_endpoints(const SimplexRef& edge) const;

  /// Checks well-formedness and the simplicial identities
  /// d_i d_j = d_{j-1} d_i (i < j) on every nondegenerate simplex.
  void validate() const;

 private:
  void check_ref(const SimplexRef& r, int expected_dim) const;

  std::vector<std::vector<std::string>> names_;                 // [dim][index]
  std::vector<std::vector<std::vector<SimplexRef>>> faces_;     // [dim][index][i]
};

/// One vertex, one nondegenerate edge (a loop).
FiniteSimplicialSet circle_model();

/// Minimal model of the 2-sphere: one vertex, one nondegenerate 2-simplex
/// whose faces are all the degenerate edge.
FiniteSimplicialSet sphere_model();

/// The standard n-simplex (all faces nondegenerate), optionally truncated
/// to its max_dim-skeleton (max_dim = n-1 gives the boundary sphere).
FiniteSimplicialSet standard_simplex(int n, int max_dim = -1);

}  // namespace atlas
