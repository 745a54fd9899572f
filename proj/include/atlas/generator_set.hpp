#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "atlas/scalar.hpp"

namespace atlas {

struct Generator {
  std::string name;
  int degree = 0;  // homological degree, >= 0
};

/// Ordered set of free generators of W. Immutable after construction;
/// shared between all values built over it.
class GeneratorSet {
 public:
  explicit GeneratorSet(std::vector<Generator> gens);

  size_t size() const { return gens_.size(); }
  const Generator& operator[](size_t i) const { return gens_[i]; }
  int degree(size_t i) const { return gens_[i].degree; }
  const std::string& name(size_t i) const { return gens_[i].name; }
  /// Index of a generator name; throws InvalidInput if absent.
  size_t index(const std::string& name) const;
  bool has(const std::string& name) const { return by_name_.count(name) > 0; }

  bool operator==(const GeneratorSet& other) const;

 private:
  std::vector<Generator> gens_;
  std::unordered_map<std::string, size_t> by_name_;
};

using GeneratorSetPtr = std::shared_ptr<const GeneratorSet>;

GeneratorSetPtr make_generators(std::vector<Generator> gens);

}  // namespace atlas
