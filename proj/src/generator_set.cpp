#include "atlas/generator_set.hpp"

namespace atlas {

GeneratorSet::GeneratorSet(std::vector<Generator> gens) : gens_(std::move(gens)) {
  if (gens_.empty()) throw InvalidInput("generator set must be non-empty");
  for (size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].name.empty()) throw InvalidInput("generator with empty name");
    if (gens_[i].degree < 0)
      throw InvalidInput("generator degree must be >= 0: " + gens_[i].name);
    if (!by_name_.emplace(gens_[i].name, i).second)
      throw InvalidInput("duplicate generator name: " + gens_[i].name);
  }
}

size_t GeneratorSet::index(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) throw InvalidInput("unknown generator: " + name);
  return it->second;
}

bool GeneratorSet::operator==(const GeneratorSet& other) const {
  if (gens_.size() != other.gens_.size()) return false;
  for (size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name != other.gens_[i].name || gens_[i].degree != other.gens_[i].degree)
      return false;
  return true;
}

GeneratorSetPtr make_generators(std::vector<Generator> gens) {
  return std::make_shared<const GeneratorSet>(std::move(gens));
}

}  // namespace atlas
