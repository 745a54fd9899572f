#include "atlas/local_system.hpp"

namespace atlas {

LocalSystem trivial_system(const FiniteSimplicialSet& k, size_t d) {
  LocalSystem m;
  m.fiber_dim.assign(k.count(0), d);
  m.edge_map.assign(k.count(1), MatQ::identity(d));
  return m;
}

MatQ edge_matrix(const FiniteSimplicialSet& k, const LocalSystem& m, const SimplexRef& edge) {
  if (edge.total_dim() != 1) throw InvalidInput("edge_matrix expects an edge");
  if (edge.degenerate()) return MatQ::identity(m.fiber_dim.at(edge.index));
  if (edge.index >= m.edge_map.size()) throw InvalidInput("missing edge matrix");
  return m.edge_map[edge.index];
}

void validate_local_system(const FiniteSimplicialSet& k, const LocalSystem& m) {
  if (m.fiber_dim.size() != k.count(0))
    throw InvalidInput("one fiber per vertex is required");
  if (m.edge_map.size() != k.count(1))
    throw InvalidInput("one matrix per nondegenerate edge is required");
  for (size_t e = 0; e < k.count(1); ++e) {
    auto [start, end] = k.edge_endpoints({1, e, {}});
    const MatQ& a = m.edge_map[e];
    if (a.rows() != m.fiber_dim[end] || a.cols() != m.fiber_dim[start])
      throw InvalidInput("edge matrix shape mismatch on " + k.name(1, e));
    if (!a.inverse()) throw InvalidInput("edge matrix is singular on " + k.name(1, e));
  }
  for (size_t s = 0; s < k.count(2); ++s) {
    MatQ lhs = edge_matrix(k, m, k.stored_face(2, s, 1));
    MatQ rhs = edge_matrix(k, m, k.stored_face(2, s, 0)) *
               edge_matrix(k, m, k.stored_face(2, s, 2));
    if (!(lhs == rhs))
      throw InvalidInput("local system is not functorial around " + k.name(2, s));
  }
  if (m.has_trivialization()) {
    if (m.trivialization.size() != k.count(0))
      throw InvalidInput("one trivialization per vertex is required");
    size_t ref = m.trivialization.front().rows();
    for (size_t v = 0; v < k.count(0); ++v) {
      const MatQ& g = m.trivialization[v];
      if (g.rows() != ref || g.cols() != m.fiber_dim[v] || g.rows() != g.cols() ||
          !g.inverse())
        throw InvalidInput("trivialization at vertex " + k.name(0, v) +
                           " is not an isomorphism to the reference fiber");
    }
    for (const MatQ& h : m.holonomy)
      if (h.rows() != ref || h.cols() != ref || !h.inverse())
        throw InvalidInput("holonomy generator is not invertible on the reference fiber");
  }
}

}  // namespace atlas
