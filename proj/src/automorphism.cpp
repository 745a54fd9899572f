#include "atlas/automorphism.hpp"

#include <sstream>

namespace atlas {

FilteredAutomorphism::FilteredAutomorphism(GeneratorSetPtr gens, WeightTruncation trunc)
    : gens_(std::move(gens)), trunc_(trunc) {
  if (!gens_) throw InvalidInput("null generator set");
  for (size_t g = 0; g < gens_->size(); ++g)
    images_.push_back(make_generator_element(gens_, g));
}

void FilteredAutomorphism::set_image(size_t gen, const TensorElement& image) {
  if (gen >= gens_->size()) throw InvalidInput("generator index out of range");
  require_same_generators(images_[gen], image);
  TensorElement img = image.truncated(trunc_);
  if (img.is_zero()) throw InvalidInput("automorphism image must be nonzero");
  auto d = img.homogeneous_degree();
  if (!d || *d != gens_->degree(gen))
    throw InvalidInput("automorphism image has wrong homological degree for " +
                       gens_->name(gen));
  if (!is_primitive(img))
    throw InvalidInput("automorphism image is not a Lie element for " + gens_->name(gen));
  images_[gen] = std::move(img);
}

TensorElement FilteredAutomorphism::apply(const TensorElement& a) const {
  if (!(*a.generators() == *gens_)) throw InvalidInput("mismatched generator sets");
  TensorElement r(gens_);
  for (const auto& [w, c] : a.terms()) {
    TensorElement prod(gens_);
    prod.add_term({}, Scalar(1));
    for (auto g : w) prod = tensor_concat(prod, images_[g], trunc_);
    r += c * prod;
  }
  return r;
}

MatQ FilteredAutomorphism::linear_part() const {
  size_t q = gens_->size();
  MatQ m(q, q);
  for (size_t g = 0; g < q; ++g)
    for (size_t h = 0; h < q; ++h)
      m.at(h, g) = images_[g].coefficient({static_cast<uint32_t>(h)});
  return m;
}

bool FilteredAutomorphism::is_pro_unipotent() const {
  return linear_part() == MatQ::identity(gens_->size());
}

void FilteredAutomorphism::validate() const {
  if (!linear_part().inverse())
    throw InvalidInput("automorphism linear part is singular");
}

bool FilteredAutomorphism::commutes_with(const ChenDifferential& delta) const {
  for (size_t g = 0; g < gens_->size(); ++g) {
    if (!(apply(delta.derivation().image(g)) == delta.apply(images_[g]))) return false;
  }
  return true;
}

FilteredAutomorphism compose(const FilteredAutomorphism& a, const FilteredAutomorphism& b) {
  if (!(*a.generators() == *b.generators()) || a.trunc().N != b.trunc().N)
    throw InvalidInput("automorphism composition needs matching generators and truncation");
  FilteredAutomorphism r(a.generators(), a.trunc());
  for (size_t g = 0; g < a.generators()->size(); ++g)
    r.set_image(g, a.apply(b.image(g)));
  return r;
}

FilteredAutomorphism FilteredAutomorphism::inverse() const {
  MatQ lin = linear_part();
  auto lin_inv = lin.inverse();
  if (!lin_inv) throw InvalidInput("automorphism linear part is singular");
  // psi_lin inverts the linear part; rho = psi_lin o phi is pro-unipotent,
  // so rho^{-1} = exp(-log rho) and phi^{-1} = rho^{-1} o psi_lin.
  FilteredAutomorphism psi_lin(gens_, trunc_);
  for (size_t g = 0; g < gens_->size(); ++g) {
    TensorElement img(gens_);
    for (size_t h = 0; h < gens_->size(); ++h)
      img.add_term({static_cast<uint32_t>(h)}, lin_inv->at(h, g));
    psi_lin.set_image(g, img);
  }
  FilteredAutomorphism rho = compose(psi_lin, *this);
  FilteredAutomorphism rho_inv = exp_derivation(Scalar(-1) * log_automorphism(rho));
  return compose(rho_inv, psi_lin);
}

bool FilteredAutomorphism::operator==(const FilteredAutomorphism& other) const {
  if (!(*gens_ == *other.gens_) || trunc_.N != other.trunc_.N) return false;
  return images_ == other.images_;
}

std::string FilteredAutomorphism::to_string() const {
  std::ostringstream os;
  for (size_t g = 0; g < gens_->size(); ++g) {
    if (g) os << "; ";
    os << gens_->name(g) << " -> " << images_[g].to_string();
  }
  return os.str();
}

FilteredAutomorphism exp_derivation(const Derivation& d) {
  if (d.degree() != 0) throw InvalidInput("exp needs a degree-0 derivation");
  if (!d.is_weight_raising())
    throw InvalidInput("exp needs a weight-raising derivation (images of weight >= 2)");
  FilteredAutomorphism phi(d.generators(), d.trunc());
  for (size_t g = 0; g < d.generators()->size(); ++g) {
    TensorElement term = make_generator_element(d.generators(), g);
    TensorElement acc = term;
    for (long k = 1; !term.is_zero(); ++k) {
      term = Scalar(1, k) * d.apply(term);
      acc += term;
    }
    phi.set_image(g, acc);
  }
  return phi;
}

Derivation log_automorphism(const FilteredAutomorphism& phi) {
  if (!phi.is_pro_unipotent())
    throw InvalidInput("log needs an automorphism with identity linear part");
  const auto& gens = phi.generators();
  const auto& trunc = phi.trunc();
  Derivation d(gens, 0, trunc);
  for (int lvl = 1; lvl <= trunc.N - 1; ++lvl) {
    FilteredAutomorphism cur = exp_derivation(d);
    Derivation corr(gens, 0, trunc);
    bool any = false;
    for (size_t g = 0; g < gens->size(); ++g) {
      TensorElement diff =
          (phi.image(g) - cur.image(g)).component(lvl + 1, std::nullopt);
      if (!diff.is_zero()) {
        corr.set_image(g, diff);
        any = true;
      }
    }
    if (any) d += corr;
  }
  if (!(exp_derivation(d) == phi))
    throw InvalidInput("log failed to converge (input is not in the exp image)");
  return d;
}

Derivation bch(const Derivation& d1, const Derivation& d2) {
  return log_automorphism(compose(exp_derivation(d1), exp_derivation(d2)));
}

LinearIso::LinearIso(GeneratorSetPtr g, MatQ m) : gens(std::move(g)), matrix(std::move(m)) {
  if (!gens) throw InvalidInput("null generator set");
  size_t q = gens->size();
  if (matrix.rows() != q || matrix.cols() != q)
    throw InvalidInput("linear iso matrix has wrong shape");
  for (size_t r = 0; r < q; ++r)
    for (size_t c = 0; c < q; ++c)
      if (matrix.at(r, c) != 0 && gens->degree(r) != gens->degree(c))
        throw InvalidInput("linear iso must preserve homological degree");
  if (!matrix.inverse()) throw InvalidInput("linear iso matrix is singular");
}

LinearIso LinearIso::inverse() const { return LinearIso(gens, *matrix.inverse()); }

FilteredAutomorphism induced_automorphism(const LinearIso& iso, const WeightTruncation& trunc) {
  FilteredAutomorphism u(iso.gens, trunc);
  for (size_t g = 0; g < iso.gens->size(); ++g) {
    TensorElement img(iso.gens);
    for (size_t h = 0; h < iso.gens->size(); ++h)
      img.add_term({static_cast<uint32_t>(h)}, iso.matrix.at(h, g));
    u.set_image(g, img);
  }
  return u;
}

Derivation transport(const LinearIso& iso, const Derivation& d) {
  FilteredAutomorphism u = induced_automorphism(iso, d.trunc());
  FilteredAutomorphism u_inv = induced_automorphism(iso.inverse(), d.trunc());
  Derivation r(d.generators(), d.degree(), d.trunc());
  for (size_t g = 0; g < d.generators()->size(); ++g)
    r.set_image(g, u.apply(d.apply(u_inv.image(g))));
  return r;
}

ChenDifferential transport(const LinearIso& iso, const ChenDifferential& delta) {
  return ChenDifferential(transport(iso, delta.derivation()));
}

FilteredAutomorphism transport(const LinearIso& iso, const FilteredAutomorphism& phi) {
  FilteredAutomorphism u = induced_automorphism(iso, phi.trunc());
  FilteredAutomorphism u_inv = induced_automorphism(iso.inverse(), phi.trunc());
  return compose(u, compose(phi, u_inv));
}

QAutClass qaut_class(const FilteredAutomorphism& phi, const ChenDifferential& delta,
                     const WeightTruncation& trunc) {
  if (!phi.is_pro_unipotent())
    throw InvalidInput("qaut class needs an automorphism with identity linear part");
  if (!phi.commutes_with(delta))
    throw InvalidInput("automorphism does not preserve the differential");
  const auto& gens = phi.generators();

  // Graded classes live over the weight-raising leading part of delta.
  ChenDifferential delta_gr(delta.derivation().weight_component(1));
  DerivationSpace sp(gens, trunc);

  QAutClass res;
  res.decided_through = trunc.N - 2;
  FilteredAutomorphism cur = phi;
  for (int i = 1; i <= trunc.N - 2; ++i) {
    Derivation d = log_automorphism(cur);
    Vec v = sp.block_coordinates(d, i);
    bool zero = true;
    for (const auto& x : v)
      if (x != 0) { zero = false; break; }
    if (zero) continue;

    // Incoming map ad(delta_gr): degree-1 level-(i-1) block -> level-i block.
    size_t dom = sp.block_dim(1, i - 1);
    MatQ m_in(v.size(), dom);
    for (size_t k = 0; k < dom; ++k) {
      Derivation img = derivation_bracket(delta_gr.derivation(), sp.basis_element(1, i - 1, k));
      Vec col = sp.block_coordinates(img, i);
      for (size_t r = 0; r < col.size(); ++r) m_in.at(r, k) = col[r];
    }
    if (auto p = m_in.solve(v)) {
      // Exact direction: gauge it away and keep reducing.
      Derivation corr = derivation_bracket(delta.derivation(),
                                           sp.from_block_coordinates(1, i - 1, *p));
      cur = compose(exp_derivation(Scalar(-1) * corr), cur);
      continue;
    }

    // Nontrivial graded class: coordinates in the homology basis at level i.
    auto hom = derivation_homology(delta_gr, 0, std::make_pair(i, i), trunc);
    const auto& reps = hom.blocks.front().representatives;
    MatQ m(v.size(), dom + reps.size());
    for (size_t k = 0; k < dom; ++k)
      for (size_t r = 0; r < v.size(); ++r) m.at(r, k) = m_in.at(r, k);
    for (size_t j = 0; j < reps.size(); ++j) {
      Vec col = sp.block_coordinates(reps[j], i);
      for (size_t r = 0; r < v.size(); ++r) m.at(r, dom + j) = col[r];
    }
    auto sol = m.solve(v);
    if (!sol)
      throw InvalidInput("graded component is not a cycle; automorphism inconsistent");
    res.trivial = false;
    res.level = i;
    res.class_coords.assign(sol->begin() + dom, sol->end());
    res.basis = reps;
    res.reduced_log = d;
    return res;
  }
  res.reduced_log = log_automorphism(cur);
  return res;
}

}  // namespace atlas
