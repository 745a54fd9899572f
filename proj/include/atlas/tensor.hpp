#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "atlas/generator_set.hpp"
#include "atlas/scalar.hpp"

namespace atlas {

/// A word in generator indices. Weight = length.
using Word = std::vector<uint32_t>;

/// Deterministic word order: length first, then lexicographic by index.
struct WordOrder {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

struct WeightTruncation {
  int N;
  explicit WeightTruncation(int n) : N(n) {
    if (n < 2) throw InvalidInput("weight truncation must satisfy N >= 2");
  }
};

/// Element of the truncated tensor algebra TW: a finite rational linear
/// combination of generator words, no stored zero coefficients.
class TensorElement {
 public:
  using TermMap = std::map<Word, Scalar, WordOrder>;

  explicit TensorElement(GeneratorSetPtr gens) : gens_(std::move(gens)) {}

  const GeneratorSetPtr& generators() const { return gens_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c * word, dropping the term if the sum cancels.
  void add_term(const Word& w, const Scalar& c);
  Scalar coefficient(const Word& w) const;

  TensorElement& operator+=(const TensorElement& other);
  TensorElement& operator-=(const TensorElement& other);
  TensorElement& operator*=(const Scalar& c);
  friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
  friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }
  friend TensorElement operator*(const Scalar& c, TensorElement a) { return a *= c; }
  bool operator==(const TensorElement& other) const;

  int word_degree(const Word& w) const;
  /// Homogeneous if all words share one homological degree.
  std::optional<int> homogeneous_degree() const;
  std::optional<int> homogeneous_weight() const;
  /// The (weight, degree)-homogeneous part; both filters optional.
  TensorElement component(std::optional<int> weight, std::optional<int> degree) const;
  int max_weight() const;  // 0 for zero element
  int min_weight() const;  // 0 for zero element
  /// Drops words of length > N.
  TensorElement truncated(const WeightTruncation& trunc) const;

  std::string to_string() const;

 private:
  GeneratorSetPtr gens_;
  TermMap terms_;
};

void require_same_generators(const TensorElement& a, const TensorElement& b);

TensorElement make_generator_element(const GeneratorSetPtr& gens, size_t index);

/// Bilinear word concatenation, words of length > N dropped.
TensorElement tensor_concat(const TensorElement& a, const TensorElement& b,
                            const WeightTruncation& trunc);

/// Graded commutator [a,b] = ab - (-1)^{|a||b|} ba, per homogeneous
/// degree component; preserves primitivity.
TensorElement lie_bracket(const TensorElement& a, const TensorElement& b,
                          const WeightTruncation& trunc);

/// Reduced coproduct data of the unshuffle coproduct on TW (the one with
/// Prim TW = LW): word-pair coefficients with Koszul signs.
struct ReducedCoproduct {
  std::map<std::pair<Word, Word>, Scalar> terms;
  bool is_primitive() const { return terms.empty(); }
};

ReducedCoproduct reduced_coproduct(const TensorElement& a);

bool is_primitive(const TensorElement& a);

}  // namespace atlas
