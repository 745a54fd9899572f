#pragma once

#include <optional>
#include <string>
#include <vector>

#include "atlas/cinfty.hpp"

namespace atlas {

/// Element of A+ (unit adjoined) tensor the truncated tensor algebra:
/// one TW component per A-basis slot, slot 0 = unit.
class TwistedElement {
 public:
  TwistedElement(GradedBasis basis, GeneratorSetPtr gens, WeightTruncation trunc);

  const GradedBasis& basis() const { return basis_; }
  const GeneratorSetPtr& generators() const { return gens_; }
  const WeightTruncation& trunc() const { return trunc_; }

  /// slot 0 = unit; slot i+1 = basis element i.
  size_t slots() const { return comps_.size(); }
  int slot_codegree(size_t s) const { return s == 0 ? 0 : basis_.degrees[s - 1]; }
  const TensorElement& comp(size_t s) const { return comps_[s]; }
  TensorElement& comp(size_t s) { return comps_[s]; }

  bool is_zero() const;
  TwistedElement& operator+=(const TwistedElement& other);
  TwistedElement& operator-=(const TwistedElement& other);
  TwistedElement& operator*=(const Scalar& c);
  friend TwistedElement operator+(TwistedElement a, const TwistedElement& b) { return a += b; }
  friend TwistedElement operator-(TwistedElement a, const TwistedElement& b) { return a -= b; }
  friend TwistedElement operator*(const Scalar& c, TwistedElement a) { return a *= c; }
  bool operator==(const TwistedElement& other) const;

  /// All components homogeneous of total degree |xi| - c(alpha) = t.
  bool is_total_degree(int t) const;
  /// Restrict every component to the given word weight.
  TwistedElement weight_part(int w) const;
  std::string to_string() const;

 private:
  GradedBasis basis_;
  GeneratorSetPtr gens_;
  WeightTruncation trunc_;
  std::vector<TensorElement> comps_;
};

/// [alpha ox xi, beta ox zeta] = (-1)^{|xi| c(beta)} (alpha beta) ox [xi, zeta],
/// with the unit acting as identity.
TwistedElement twisted_bracket(const DGAModel& a, const TwistedElement& x,
                               const TwistedElement& y);

/// (d alpha) ox xi.
TwistedElement apply_dga_d(const DGAModel& a, const TwistedElement& x);

/// (-1)^{c(alpha)+1} alpha ox delta(xi).
TwistedElement apply_delta(const ChenDifferential& delta, const TwistedElement& x);

/// A formal connection: a Lie-element-valued assignment on the A-basis of
/// total cohomological degree 1, paired with a Chen differential.
struct FormalConnection {
  GradedBasis basis;
  std::vector<TensorElement> omega;  // index = basis slot (no unit component)
  ChenDifferential delta;
  WeightTruncation trunc;

  FormalConnection(GradedBasis b, std::vector<TensorElement> om, ChenDifferential d,
                   WeightTruncation t);

  /// omega as a twisted element (slots shifted by one for the unit).
  TwistedElement as_element() const;
};

/// omega_a = e_a ox w_a for every basis element (the weight-1 tautological
/// connection of a minimal model), delta from the dictionary.
FormalConnection canonical_formal_connection(const CInftyStructure& m,
                                             const WeightTruncation& trunc);

struct McCheckReport {
  bool ok = true;
  /// First nonzero component of d omega + delta omega + [omega,omega]/2.
  std::string detail;
};

/// Flatness: d omega + delta omega + (1/2)[omega, omega] = 0 mod weight > N.
McCheckReport mc_check(const DGAModel& a, const FormalConnection& conn);

}  // namespace atlas
