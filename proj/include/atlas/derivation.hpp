#pragma once

#include <string>
#include <vector>

#include "atlas/tensor.hpp"

namespace atlas {

/// Graded Leibniz extension of generator images of homological degree
/// `degree` to a word-linear map on TW; images need not be primitive.
TensorElement leibniz_apply(const GeneratorSetPtr& gens,
                            const std::vector<TensorElement>& images, int degree,
                            const TensorElement& a, const WeightTruncation& trunc);

/// Derivation of the truncated free Lie algebra, determined by its
/// generator images and extended over words by the graded Leibniz rule.
class Derivation {
 public:
  /// Zero derivation of the given homological degree.
  Derivation(GeneratorSetPtr gens, int degree, WeightTruncation trunc);

  const GeneratorSetPtr& generators() const { return gens_; }
  int degree() const { return degree_; }
  const WeightTruncation& trunc() const { return trunc_; }

  /// Sets the image of one generator. The image must be a primitive element,
  /// homogeneous of degree |generator| + degree().
  void set_image(size_t gen, const TensorElement& image);
  const TensorElement& image(size_t gen) const { return images_[gen]; }

  bool is_zero() const;
  /// Leibniz extension to TW, word by word with Koszul signs.
  TensorElement apply(const TensorElement& a) const;

  Derivation& operator+=(const Derivation& other);
  Derivation& operator-=(const Derivation& other);
  Derivation& operator*=(const Scalar& c);
  friend Derivation operator+(Derivation a, const Derivation& b) { return a += b; }
  friend Derivation operator-(Derivation a, const Derivation& b) { return a -= b; }
  friend Derivation operator*(const Scalar& c, Derivation a) { return a *= c; }
  bool operator==(const Derivation& other) const;

  /// Weight-i part (in the second grading: images restricted to weight i+1).
  Derivation weight_component(int i) const;
  /// Smallest i >= 0 with nonzero weight component; -1 for the zero derivation.
  int min_weight_level() const;
  int max_weight_level() const;
  /// True iff every image has weight >= 2 (member of the D^(1) filtration).
  bool is_weight_raising() const;

  std::string to_string() const;

 private:
  GeneratorSetPtr gens_;
  int degree_;
  WeightTruncation trunc_;
  std::vector<TensorElement> images_;
};

/// [D1, D2] = D1 D2 - (-1)^{n1 n2} D2 D1, by generator images.
Derivation derivation_bracket(const Derivation& d1, const Derivation& d2);

struct ChenCheckReport {
  bool ok = true;
  bool degree_ok = true;
  bool weight_ok = true;
  bool square_ok = true;
  std::string detail;
};

/// Verifies degree -1, images of weight >= 2, and delta^2 = 0 mod weight > N.
ChenCheckReport check_chen_differential(const Derivation& delta);

/// A validated Chen differential.
class ChenDifferential {
 public:
  explicit ChenDifferential(Derivation d);
  const Derivation& derivation() const { return d_; }
  TensorElement apply(const TensorElement& a) const { return d_.apply(a); }
  /// True iff every generator image is pure weight 2 (delta(W) in [W,W]),
  /// making ad(delta) a pure weight +1 operator.
  bool pure_weight() const;
  /// Largest generator-image weight (2 for a pure-weight differential).
  int max_image_weight() const;

 private:
  Derivation d_;
};

}  // namespace atlas
