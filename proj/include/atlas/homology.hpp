#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "atlas/derivation.hpp"
#include "atlas/lie_basis.hpp"

namespace atlas {

/// Finite (degree, weight) blocks of Der(L^W) with deterministic bases.
/// Der_n^i has one basis element per (generator g, Lie basis vector of the
/// weight-(i+1), degree-(|g|+n) component).
class DerivationSpace {
 public:
  DerivationSpace(GeneratorSetPtr gens, WeightTruncation trunc);

  const GeneratorSetPtr& generators() const { return gens_; }
  const WeightTruncation& trunc() const { return trunc_; }
  LieBasis& lie() { return lie_; }

  size_t block_dim(int n, int i);
  Derivation basis_element(int n, int i, size_t k);
  /// Coordinates of the weight-i component of D (degree must match n).
  Vec block_coordinates(const Derivation& d, int i);
  Derivation from_block_coordinates(int n, int i, const Vec& coords);

 private:
  struct Block {
    // (generator, index into lie component basis), plus per-generator offsets
    std::vector<std::pair<size_t, size_t>> elems;
    std::vector<size_t> gen_offset;
  };
  const Block& block(int n, int i);

  GeneratorSetPtr gens_;
  WeightTruncation trunc_;
  LieBasis lie_;
  std::map<std::pair<int, int>, Block> blocks_;
};

struct HomologyBlock {
  int weight_lo, weight_hi;  // equal for pure-weight blocks
  size_t dim = 0;
  size_t kernel_dim = 0;
  size_t boundary_dim = 0;
  std::vector<Derivation> representatives;
};

struct HomologyReport {
  int degree = 0;
  bool pure_weight = true;
  int window_lo = 1, window_hi = 1;
  /// Weights <= stable_hi are guaranteed unaffected by the truncation.
  int stable_hi = 1;
  std::vector<HomologyBlock> blocks;
  size_t total_dim = 0;
};

/// Homology of (Der(L^W), ad(delta)) in homological degree n.
///
/// For a pure-weight delta the requested window is computed blockwise per
/// weight; single weights are admissible. For mixed-weight delta the
/// window is computed as one truncated block and single-weight requests
/// are rejected. Windows beyond the truncation guard are rejected with
/// the minimal sufficient N in the message.
HomologyReport derivation_homology(const ChenDifferential& delta, int n,
                                   std::optional<std::pair<int, int>> window,
                                   const WeightTruncation& trunc);

}  // namespace atlas
