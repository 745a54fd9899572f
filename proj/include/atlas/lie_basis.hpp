#pragma once

#include <map>
#include <optional>
#include <vector>

#include "atlas/linalg.hpp"
#include "atlas/tensor.hpp"

namespace atlas {

/// Lazy per-generator-set computation of the weight/degree components of
/// the free graded Lie algebra LW inside TW.
///
/// Components are built bottom-up from L_1 = W via L_w = [W, L_{w-1}] and
/// returned as a reduced-echelon basis over the deterministic word order.
/// This yields exactly the reduced-echelon basis of ker(reduced coproduct)
/// on the component; primitivity of every basis vector is checked against
/// the coproduct in the test suite (and on demand via verify_component).
class LieBasis {
 public:
  explicit LieBasis(GeneratorSetPtr gens);

  const GeneratorSetPtr& generators() const { return gens_; }

  /// All words of the given weight and homological degree, sorted.
  const std::vector<Word>& words(int weight, int degree);
  /// Homological degrees occurring among words of the given weight.
  std::vector<int> degrees_present(int weight);

  /// Reduced-echelon basis of the (weight, degree) component of LW.
  const std::vector<TensorElement>& component(int weight, int degree);
  size_t dimension(int weight, int degree);

  /// Dense coefficient vector of a (weight, degree)-homogeneous element.
  Vec word_vector(const TensorElement& elt, int weight, int degree);
  /// Coordinates of a homogeneous Lie element in the component basis;
  /// nullopt if the element is not in the component.
  std::optional<Vec> coordinates(const TensorElement& elt, int weight, int degree);
  TensorElement from_coordinates(const Vec& coords, int weight, int degree);

  /// Checks every basis vector of the component against the reduced
  /// coproduct; throws InvalidInput on failure.
  void verify_component(int weight, int degree);

 private:
  struct Component {
    std::vector<TensorElement> basis;
    RowSpan span;
    Component(size_t cols) : span(cols) {}
  };
  Component& component_impl(int weight, int degree);
  size_t word_index(const Word& w, int weight, int degree);

  GeneratorSetPtr gens_;
  std::map<int, std::map<int, std::vector<Word>>> words_;  // weight -> degree -> words
  std::map<std::pair<int, int>, Component> comps_;
  std::map<std::pair<int, int>, std::map<Word, size_t>> word_index_;
};

struct LieComponentResult {
  int weight;
  std::optional<int> degree;
  size_t dimension;
  std::vector<TensorElement> basis;
};

/// Basis of the weight-homogeneous (optionally also degree-homogeneous)
/// component of LW. weight must be <= trunc.N.
LieComponentResult lie_component_basis(const GeneratorSetPtr& gens, int weight,
                                       std::optional<int> degree,
                                       const WeightTruncation& trunc);

/// Witt/necklace dimension for q degree-0 generators at weight n.
long witt_dimension(long q, long n);

}  // namespace atlas
