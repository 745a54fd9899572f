#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "atlas/connection.hpp"

namespace atlas {

struct TwistedHomologyBlock {
  int weight_lo, weight_hi;
  size_t dim = 0;
  size_t kernel_dim = 0;
  size_t boundary_dim = 0;
};

struct TwistedHomologyReport {
  int n = 0;  // reported homology lives in total degree n-1
  bool pure = true;
  int window_lo = 1, window_hi = 1;
  int stable_hi = 1;
  std::vector<TwistedHomologyBlock> blocks;
  size_t total_dim = 0;
};

/// Homology of (A_reduced ox L^W, d + delta + [omega,-]) in total degree
/// n-1, graded by word weight. The connection must be flat. For a pure
/// setup (d = 0, weight-2 differential images, weight-1 connection) the
/// blocks are exact per weight; otherwise one quotient-complex window is
/// reported with its guaranteed-stable range.
TwistedHomologyReport twisted_complex_homology(const DGAModel& a,
                                               const FormalConnection& conn, int n,
                                               std::optional<std::pair<int, int>> window,
                                               const WeightTruncation& trunc);

}  // namespace atlas
