#include "atlas/twisted_complex.hpp"

#include <algorithm>

#include "atlas/homology.hpp"
#include "atlas/lie_basis.hpp"

namespace atlas {

namespace {

/// Deterministic basis of the reduced twisted complex in total degree t
/// over a weight window: entries (slot, weight, lie index), slot >= 1.
struct TwIndex {
  struct Entry {
    size_t slot;
    int weight;
    size_t lie_index;
  };
  std::vector<Entry> entries;

  TwIndex(LieBasis& lie, const GradedBasis& basis, int t, int lo, int hi) {
    for (int w = lo; w <= hi; ++w)
      for (size_t s = 0; s < basis.size(); ++s) {
        int deg = t + basis.degrees[s];
        size_t dim = deg >= 0 ? lie.dimension(w, deg) : 0;
        for (size_t k = 0; k < dim; ++k) entries.push_back({s + 1, w, k});
      }
  }

  size_t total() const { return entries.size(); }
};

TwistedElement element_of(LieBasis& lie, const GradedBasis& basis,
                          const GeneratorSetPtr& gens, const WeightTruncation& trunc,
                          int t, const TwIndex::Entry& e) {
  TwistedElement x(basis, gens, trunc);
  int deg = t + basis.degrees[e.slot - 1];
  x.comp(e.slot) += lie.component(e.weight, deg)[e.lie_index];
  return x;
}

Vec coordinates_of(LieBasis& lie, const TwistedElement& x, int t, const TwIndex& idx) {
  Vec v(idx.total(), Scalar(0));
  for (size_t i = 0; i < idx.entries.size(); ++i) {
    const auto& e = idx.entries[i];
    int deg = t + x.basis().degrees[e.slot - 1];
    TensorElement part = x.comp(e.slot).component(e.weight, deg);
    if (part.is_zero()) continue;
    auto coords = lie.coordinates(part, e.weight, deg);
    if (!coords) throw InvalidInput("twisted component is outside the Lie subspace");
    v[i] = (*coords)[e.lie_index];
  }
  return v;
}

}  // namespace

TwistedHomologyReport twisted_complex_homology(const DGAModel& a,
                                               const FormalConnection& conn, int n,
                                               std::optional<std::pair<int, int>> window,
                                               const WeightTruncation& trunc) {
  a.validate();
  auto flat = mc_check(a, conn);
  if (!flat.ok) throw InvalidInput("connection is not flat: " + flat.detail);
  auto gens = conn.delta.derivation().generators();
  LieBasis lie(gens);

  // weight raise of each differential summand
  int omega_max = 0;
  for (const auto& om : conn.omega)
    if (!om.is_zero()) omega_max = std::max(omega_max, om.max_weight());
  bool d_zero = true;
  for (size_t i = 0; i < a.basis.size() && d_zero; ++i)
    for (size_t j = 0; j < a.basis.size(); ++j)
      if (a.d.at(i, j) != 0) { d_zero = false; break; }
  int raise_max = std::max({conn.delta.max_image_weight() - 1, omega_max, 1});
  bool pure = d_zero && conn.delta.max_image_weight() == 2 && omega_max <= 1;

  TwistedElement omega = conn.as_element();
  auto apply_D = [&](const TwistedElement& x) {
    return apply_dga_d(a, x) + apply_delta(conn.delta, x) + twisted_bracket(a, omega, x);
  };

  TwistedHomologyReport rep;
  rep.n = n;
  rep.pure = pure;
  const int t = n - 1;

  auto run_block = [&](int mid_lo, int mid_hi, int dom_lo, int dom_hi, int tgt_lo,
                       int tgt_hi) {
    TwIndex mid(lie, a.basis, t, mid_lo, mid_hi);
    TwIndex dom(lie, a.basis, t + 1, dom_lo, dom_hi);
    TwIndex tgt(lie, a.basis, t - 1, tgt_lo, tgt_hi);
    TwistedHomologyBlock blk;
    blk.weight_lo = mid_lo;
    blk.weight_hi = mid_hi;
    MatQ out(tgt.total(), mid.total());
    for (size_t k = 0; k < mid.total(); ++k) {
      TwistedElement img =
          apply_D(element_of(lie, a.basis, gens, trunc, t, mid.entries[k]));
      Vec col = coordinates_of(lie, img, t - 1, tgt);
      for (size_t r = 0; r < tgt.total(); ++r) out.at(r, k) = col[r];
    }
    blk.kernel_dim = mid.total() - out.rank();
    RowSpan image(mid.total());
    for (size_t k = 0; k < dom.total(); ++k) {
      TwistedElement img =
          apply_D(element_of(lie, a.basis, gens, trunc, t + 1, dom.entries[k]));
      image.insert(coordinates_of(lie, img, t, mid));
    }
    blk.boundary_dim = image.dim();
    if (blk.kernel_dim < blk.boundary_dim)
      throw InvalidInput("twisted complex window is not a complex (internal error)");
    blk.dim = blk.kernel_dim - blk.boundary_dim;
    return blk;
  };

  if (pure) {
    int lo = window ? window->first : 1;
    int hi = window ? window->second : trunc.N - 1;
    if (lo < 1 || hi < lo) throw InvalidInput("invalid weight window");
    if (hi > trunc.N - 1)
      throw InvalidInput("weight window exceeds truncation guard; minimal sufficient N = " +
                         std::to_string(hi + 1));
    rep.window_lo = lo;
    rep.window_hi = hi;
    rep.stable_hi = hi;
    for (int w = lo; w <= hi; ++w) {
      auto blk = run_block(w, w, std::max(1, w - 1), w - 1, w + 1, w + 1);
      rep.total_dim += blk.dim;
      rep.blocks.push_back(std::move(blk));
    }
  } else {
    if (window && window->first == window->second)
      throw InvalidInput(
          "single-weight request is not admissible for a mixed-weight twisted complex; "
          "request a weight window");
    int lo = window ? window->first : 1;
    int hi = window ? window->second : trunc.N - raise_max;
    if (lo < 1 || hi < lo) throw InvalidInput("invalid weight window");
    if (hi > trunc.N - raise_max)
      throw InvalidInput("weight window exceeds truncation guard; minimal sufficient N = " +
                         std::to_string(hi + raise_max));
    rep.window_lo = lo;
    rep.window_hi = hi;
    rep.stable_hi = std::max(0, trunc.N - 2 * raise_max);
    auto blk = run_block(lo, hi, std::max(1, lo - raise_max), hi, lo, hi);
    rep.total_dim = blk.dim;
    rep.blocks.push_back(std::move(blk));
  }
  return rep;
}

}  // namespace atlas
