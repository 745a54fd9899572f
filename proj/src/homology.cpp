#include "atlas/homology.hpp"

#include <algorithm>

namespace atlas {

DerivationSpace::DerivationSpace(GeneratorSetPtr gens, WeightTruncation trunc)
    : gens_(std::move(gens)), trunc_(trunc), lie_(gens_) {}

const DerivationSpace::Block& DerivationSpace::block(int n, int i) {
  auto key = std::make_pair(n, i);
  auto it = blocks_.find(key);
  if (it != blocks_.end()) return it->second;
  Block b;
  b.gen_offset.assign(gens_->size() + 1, 0);
  if (i >= 0 && i + 1 <= trunc_.N) {
    for (size_t g = 0; g < gens_->size(); ++g) {
      b.gen_offset[g] = b.elems.size();
      int target_deg = gens_->degree(g) + n;
      if (target_deg >= 0) {
        size_t dim = lie_.dimension(i + 1, target_deg);
        for (size_t k = 0; k < dim; ++k) b.elems.emplace_back(g, k);
      }
    }
  }
  b.gen_offset[gens_->size()] = b.elems.size();
  return blocks_.emplace(key, std::move(b)).first->second;
}

size_t DerivationSpace::block_dim(int n, int i) { return block(n, i).elems.size(); }

Derivation DerivationSpace::basis_element(int n, int i, size_t k) {
  const auto& b = block(n, i);
  if (k >= b.elems.size()) throw InvalidInput("block basis index out of range");
  auto [g, idx] = b.elems[k];
  Derivation d(gens_, n, trunc_);
  d.set_image(g, lie_.component(i + 1, gens_->degree(g) + n)[idx]);
  return d;
}

Vec DerivationSpace::block_coordinates(const Derivation& d, int i) {
  if (!(*d.generators() == *gens_)) throw InvalidInput("mismatched generator sets");
  const auto& b = block(d.degree(), i);
  Vec v(b.elems.size(), Scalar(0));
  for (size_t g = 0; g < gens_->size(); ++g) {
    TensorElement part = d.image(g).component(i + 1, std::nullopt);
    if (part.is_zero()) continue;
    int deg = gens_->degree(g) + d.degree();
    auto coords = lie_.coordinates(part, i + 1, deg);
    if (!coords) throw InvalidInput("derivation image is outside the Lie component");
    for (size_t k = 0; k < coords->size(); ++k) v[b.gen_offset[g] + k] = (*coords)[k];
  }
  return v;
}

Derivation DerivationSpace::from_block_coordinates(int n, int i, const Vec& coords) {
  const auto& b = block(n, i);
  if (coords.size() != b.elems.size()) throw InvalidInput("coordinate dimension mismatch");
  Derivation d(gens_, n, trunc_);
  for (size_t g = 0; g < gens_->size(); ++g) {
    int deg = gens_->degree(g) + n;
    TensorElement img(gens_);
    for (size_t k = b.gen_offset[g]; k < b.gen_offset[g + 1]; ++k) {
      if (coords[k] == 0) continue;
      img += coords[k] * lie_.component(i + 1, deg)[b.elems[k].second];
    }
    if (!img.is_zero()) d.set_image(g, img);
  }
  return d;
}

namespace {

// Index bookkeeping over a list of weight blocks.
struct WindowIndex {
  std::vector<int> weights;
  std::vector<size_t> offsets;  // offsets.back() = total dim
  size_t total = 0;
  WindowIndex(DerivationSpace& sp, int n, int lo, int hi) {
    offsets.push_back(0);
    for (int i = lo; i <= hi; ++i) {
      weights.push_back(i);
      offsets.push_back(offsets.back() + sp.block_dim(n, i));
    }
    total = offsets.back();
  }
};

Vec window_coordinates(DerivationSpace& sp, const Derivation& d, const WindowIndex& wi) {
  Vec v(wi.total, Scalar(0));
  for (size_t b = 0; b < wi.weights.size(); ++b) {
    Vec c = sp.block_coordinates(d, wi.weights[b]);
    for (size_t k = 0; k < c.size(); ++k) v[wi.offsets[b] + k] = c[k];
  }
  return v;
}

Derivation from_window(DerivationSpace& sp, int n, const WindowIndex& wi, const Vec& v) {
  Derivation d(sp.generators(), n, sp.trunc());
  for (size_t b = 0; b < wi.weights.size(); ++b) {
    Vec c(v.begin() + wi.offsets[b], v.begin() + wi.offsets[b + 1]);
    d += sp.from_block_coordinates(n, wi.weights[b], c);
  }
  return d;
}

// dim/kernel/image data of ad(delta) around the middle space described by
// `mid` (degree n); domain and target windows chosen by the caller.
HomologyBlock compute_block(DerivationSpace& sp, const ChenDifferential& delta, int n,
                            const WindowIndex& mid, const WindowIndex& dom,
                            const WindowIndex& tgt) {
  HomologyBlock blk;
  blk.weight_lo = mid.weights.front();
  blk.weight_hi = mid.weights.back();

  // Kernel of the outgoing map.
  MatQ out(tgt.total, mid.total);
  for (size_t b = 0; b < mid.weights.size(); ++b) {
    int i = mid.weights[b];
    for (size_t k = 0; k < sp.block_dim(n, i); ++k) {
      Derivation e = sp.basis_element(n, i, k);
      Derivation img = derivation_bracket(delta.derivation(), e);
      Vec col = window_coordinates(sp, img, tgt);
      for (size_t r = 0; r < tgt.total; ++r) out.at(r, mid.offsets[b] + k) = col[r];
    }
  }
  auto kernel = out.kernel_basis();
  blk.kernel_dim = kernel.size();

  // Image of the incoming map.
  RowSpan image(mid.total);
  for (size_t b = 0; b < dom.weights.size(); ++b) {
    int j = dom.weights[b];
    for (size_t k = 0; k < sp.block_dim(n + 1, j); ++k) {
      Derivation e = sp.basis_element(n + 1, j, k);
      Derivation img = derivation_bracket(delta.derivation(), e);
      image.insert(window_coordinates(sp, img, mid));
    }
  }
  blk.boundary_dim = image.dim();

  // Representatives: kernel vectors independent modulo the image.
  RowSpan quotient(mid.total);
  for (const auto& row : image.rows()) quotient.insert(row);
  for (const auto& v : kernel) {
    if (quotient.insert(v)) {
      blk.representatives.push_back(from_window(sp, n, mid, v));
    }
  }
  blk.dim = blk.kernel_dim - blk.boundary_dim;
  if (blk.dim != blk.representatives.size())
    throw InvalidInput("homology rank accounting failed (image not inside kernel?)");
  return blk;
}

}  // namespace

HomologyReport derivation_homology(const ChenDifferential& delta, int n,
                                   std::optional<std::pair<int, int>> window,
                                   const WeightTruncation& trunc) {
  DerivationSpace sp(delta.derivation().generators(), trunc);
  HomologyReport rep;
  rep.degree = n;
  rep.pure_weight = delta.pure_weight();
  const int margin = delta.max_image_weight() - 1;

  if (rep.pure_weight) {
    int lo = window ? window->first : 0;
    int hi = window ? window->second : trunc.N - 2;
    if (lo < 0 || hi < lo) throw InvalidInput("invalid weight window");
    if (hi > trunc.N - 2)
      throw InvalidInput("weight window exceeds truncation guard; minimal sufficient N = " +
                         std::to_string(hi + 2));
    rep.window_lo = lo;
    rep.window_hi = hi;
    rep.stable_hi = hi;  // pure-weight blocks are exact
    for (int i = lo; i <= hi; ++i) {
      WindowIndex mid(sp, n, i, i);
      WindowIndex dom(sp, n + 1, std::max(0, i - 1), i - 1);
      WindowIndex tgt(sp, n - 1, i + 1, i + 1);
      auto blk = compute_block(sp, delta, n, mid, dom, tgt);
      rep.total_dim += blk.dim;
      rep.blocks.push_back(std::move(blk));
    }
  } else {
    if (window && window->first == window->second)
      throw InvalidInput(
          "single-weight request is not admissible for a mixed-weight differential; "
          "request a weight window");
    int lo = window ? window->first : 1;
    int hi = window ? window->second : trunc.N - margin;
    if (lo < 1 || hi < lo) throw InvalidInput("invalid weight window");
    if (hi > trunc.N - margin)
      throw InvalidInput("weight window exceeds truncation guard; minimal sufficient N = " +
                         std::to_string(hi + margin));
    rep.window_lo = lo;
    rep.window_hi = hi;
    rep.stable_hi = std::max(0, trunc.N - 2 * margin);
    // Quotient-complex semantics: weights above the window are quotiented
    // away, so the window carries a genuine complex and image lies inside
    // kernel; weights near the top are truncation-sensitive (see stable_hi).
    WindowIndex mid(sp, n, lo, hi);
    WindowIndex dom(sp, n + 1, std::max(0, lo - margin), hi - 1);
    WindowIndex tgt(sp, n - 1, lo + 1, hi);
    auto blk = compute_block(sp, delta, n, mid, dom, tgt);
    rep.total_dim = blk.dim;
    rep.blocks.push_back(std::move(blk));
  }
  return rep;
}

}  // namespace atlas
