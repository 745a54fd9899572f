#pragma once

#include <optional>
#include <string>
#include <vector>

#include "atlas/local_system.hpp"

namespace atlas {

/// Normalized cochain of a fixed degree: one value per nondegenerate
/// simplex of that degree, living in the fiber over its leading vertex.
/// (Values on degenerate simplices are identically zero by encoding.)
struct Cochain {
  int degree = 0;
  std::vector<Vec> values;

  bool is_zero() const;
  bool operator==(const Cochain& other) const {
    return degree == other.degree && values == other.values;
  }
};

/// Zero cochain of degree n with the fiber sizes prescribed by m.
Cochain zero_cochain(const FiniteSimplicialSet& k, const LocalSystem& m, int n);

/// Checks that every value has the dimension of the fiber over the
/// leading vertex of its simplex.
void validate_cochain(const FiniteSimplicialSet& k, const LocalSystem& m, const Cochain& c);

/// Twisted simplicial coboundary: for an (n+1)-simplex x,
///   (dc)(x) = M(x01)^{-1} c(d0 x) - c(d1 x) + ... + (-1)^{n+1} c(d_{n+1} x)
/// with x01 the leading edge d2...d_{n+1} x. Degrees above the dimension
/// of k yield the (empty) zero cochain.
Cochain twisted_coboundary(const Cochain& c, const LocalSystem& m,
                           const FiniteSimplicialSet& k);

struct CohomologyResult {
  size_t dim = 0;
  size_t cocycle_dim = 0;
  size_t coboundary_dim = 0;
  std::vector<Cochain> representatives;
};

/// Twisted cohomology in degree n by exact rank computation.
CohomologyResult local_cohomology(const FiniteSimplicialSet& k, const LocalSystem& m, int n);

struct ClassReduction {
  bool is_cocycle = true;
  std::string failing_simplex;  // when not a cocycle
  bool trivial = false;
  std::optional<Cochain> certificate;  // b with db = c when trivial (degree >= 1)
  Vec class_coords;                    // coordinates in `basis` otherwise
  std::vector<Cochain> basis;
};

/// Decides whether a cocycle is a coboundary; returns the certificate or
/// the reduced class coordinates in the local_cohomology basis.
ClassReduction class_reduce(const Cochain& c, const LocalSystem& m,
                            const FiniteSimplicialSet& k);

struct DifferenceReport {
  bool ok = true;
  std::string locus;
};

/// Checks dd = c1 - c0 exactly.
DifferenceReport verify_difference(const Cochain& c0, const Cochain& c1, const Cochain& d,
                                   const LocalSystem& m, const FiniteSimplicialSet& k);

/// Alternating p-form on the reference fiber, supplied as a sum of
/// products of linear functionals: psi(v1..vp) = sum_t prod_j t[j](vj).
struct MultiForm {
  size_t arity = 1;
  std::vector<std::vector<Vec>> terms;
};

struct CupResult {
  Cochain cochain;      // scalar cochain of degree arity * c.degree
  ClassReduction cls;   // its class with trivial 1-dimensional coefficients
};

/// Characteristic evaluation: each functional is applied to the
/// trivialized values of c, and the resulting scalar cochains are
/// multiplied with the Alexander-Whitney (front face / back face) cup
/// product on normalized cochains. psi must be invariant under the
/// supplied holonomy generators.
CupResult cup_characteristic(const MultiForm& psi, const Cochain& c, const LocalSystem& m,
                             const FiniteSimplicialSet& k);

}  // namespace atlas
