#pragma once

#include <optional>
#include <string>
#include <vector>

#include "atlas/derivation.hpp"
#include "atlas/homology.hpp"
#include "atlas/linalg.hpp"

namespace atlas {

/// Filtered automorphism of the truncated free Lie algebra, determined by
/// generator images (Lie elements of the same homological degree) and
/// extended multiplicatively over words.
class FilteredAutomorphism {
 public:
  /// Identity automorphism.
  FilteredAutomorphism(GeneratorSetPtr gens, WeightTruncation trunc);

  const GeneratorSetPtr& generators() const { return gens_; }
  const WeightTruncation& trunc() const { return trunc_; }

  /// Image must be primitive, homogeneous of the generator's degree, and
  /// carry an invertible linear part overall (checked lazily via validate()).
  void set_image(size_t gen, const TensorElement& image);
  const TensorElement& image(size_t gen) const { return images_[gen]; }

  TensorElement apply(const TensorElement& a) const;

  /// Matrix of the induced map on W (column g holds the weight-1 part of
  /// the image of g).
  MatQ linear_part() const;
  /// Linear part equals the identity: member of the level-1 filtration
  /// subgroup.
  bool is_pro_unipotent() const;
  /// Throws unless the linear part is invertible.
  void validate() const;

  bool commutes_with(const ChenDifferential& delta) const;

  FilteredAutomorphism inverse() const;

  bool operator==(const FilteredAutomorphism& other) const;
  std::string to_string() const;

 private:
  GeneratorSetPtr gens_;
  WeightTruncation trunc_;
  std::vector<TensorElement> images_;
};

/// (a, b) -> a after b.
FilteredAutomorphism compose(const FilteredAutomorphism& a, const FilteredAutomorphism& b);

/// exp(D) = sum D^k / k! on generators. D must have degree 0 and raise the
/// weight (images of weight >= 2), so the series terminates mod truncation.
FilteredAutomorphism exp_derivation(const Derivation& d);

/// Inverse of exp on the pro-unipotent subgroup, solved weight by weight.
Derivation log_automorphism(const FilteredAutomorphism& phi);

/// log(exp(d1) exp(d2)).
Derivation bch(const Derivation& d1, const Derivation& d2);

/// Degree-preserving invertible change of basis of W.
struct LinearIso {
  GeneratorSetPtr gens;
  MatQ matrix;  // column g = coordinates of the image of g

  LinearIso(GeneratorSetPtr g, MatQ m);
  LinearIso inverse() const;
};

FilteredAutomorphism induced_automorphism(const LinearIso& iso, const WeightTruncation& trunc);
Derivation transport(const LinearIso& iso, const Derivation& d);
ChenDifferential transport(const LinearIso& iso, const ChenDifferential& delta);
FilteredAutomorphism transport(const LinearIso& iso, const FilteredAutomorphism& phi);

struct QAutClass {
  bool trivial = true;
  /// First filtration level with a nonvanishing graded class; -1 if trivial.
  int level = -1;
  /// Coordinates in the degree-0 homology basis at `level`.
  Vec class_coords;
  std::vector<Derivation> basis;
  /// log of the gauge-reduced automorphism (the canonical representative).
  std::optional<Derivation> reduced_log;
  /// Classes were decided for levels <= decided_through.
  int decided_through = 0;
};

/// Stepwise reduction of phi modulo the subgroup generated by exp(ad(delta)
/// of degree-1 derivations), along the weight filtration. phi must commute
/// with delta and be pro-unipotent.
QAutClass qaut_class(const FilteredAutomorphism& phi, const ChenDifferential& delta,
                     const WeightTruncation& trunc);

}  // namespace atlas
