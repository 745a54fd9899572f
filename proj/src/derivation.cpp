#include "atlas/derivation.hpp"

#include <sstream>

namespace atlas {

Derivation::Derivation(GeneratorSetPtr gens, int degree, WeightTruncation trunc)
    : gens_(std::move(gens)), degree_(degree), trunc_(trunc) {
  if (!gens_) throw InvalidInput("null generator set");
  images_.assign(gens_->size(), TensorElement(gens_));
}

void Derivation::set_image(size_t gen, const TensorElement& image) {
  if (gen >= gens_->size()) throw InvalidInput("generator index out of range");
  require_same_generators(images_[gen], image);
  TensorElement img = image.truncated(trunc_);
  if (!img.is_zero()) {
    auto d = img.homogeneous_degree();
    if (!d || *d != gens_->degree(gen) + degree_)
      throw InvalidInput("derivation image has wrong homological degree for " +
                         gens_->name(gen));
    if (!is_primitive(img))
      throw InvalidInput("derivation image is not a Lie element for " + gens_->name(gen));
  }
  images_[gen] = std::move(img);
}

bool Derivation::is_zero() const {
  for (const auto& img : images_)
    if (!img.is_zero()) return false;
  return true;
}

TensorElement leibniz_apply(const GeneratorSetPtr& gens,
                            const std::vector<TensorElement>& images, int degree,
                            const TensorElement& a, const WeightTruncation& trunc) {
  if (!(*a.generators() == *gens)) throw InvalidInput("mismatched generator sets");
  TensorElement r(gens);
  const bool odd = (degree % 2) != 0;
  for (const auto& [w, c] : a.terms()) {
    // D(x_1...x_k) = sum_i (-1)^{n(|x_1|+...+|x_{i-1}|)} x_1..D(x_i)..x_k
    int prefix_deg = 0;
    for (size_t i = 0; i < w.size(); ++i) {
      const TensorElement& di = images[w[i]];
      if (!di.is_zero()) {
        int sign = (odd && prefix_deg % 2 != 0) ? -1 : 1;
        for (const auto& [u, cu] : di.terms()) {
          if (static_cast<int>(w.size() - 1 + u.size()) > trunc.N) continue;
          Word nw(w.begin(), w.begin() + i);
          nw.insert(nw.end(), u.begin(), u.end());
          nw.insert(nw.end(), w.begin() + i + 1, w.end());
          r.add_term(nw, Scalar(sign) * c * cu);
        }
      }
      prefix_deg += gens->degree(w[i]);
    }
  }
  return r;
}

TensorElement Derivation::apply(const TensorElement& a) const {
  return leibniz_apply(gens_, images_, degree_, a, trunc_);
}

Derivation& Derivation::operator+=(const Derivation& other) {
  if (!(*gens_ == *other.gens_) || degree_ != other.degree_)
    throw InvalidInput("derivation sum needs matching generators and degree");
  for (size_t g = 0; g < images_.size(); ++g) {
    images_[g] += other.images_[g];
    images_[g] = images_[g].truncated(trunc_);
  }
  return *this;
}

Derivation& Derivation::operator-=(const Derivation& other) {
  if (!(*gens_ == *other.gens_) || degree_ != other.degree_)
    throw InvalidInput("derivation difference needs matching generators and degree");
  for (size_t g = 0; g < images_.size(); ++g) {
    images_[g] -= other.images_[g];
    images_[g] = images_[g].truncated(trunc_);
  }
  return *this;
}

Derivation& Derivation::operator*=(const Scalar& c) {
  for (auto& img : images_) img *= c;
  return *this;
}

bool Derivation::operator==(const Derivation& other) const {
  if (!(*gens_ == *other.gens_) || degree_ != other.degree_) return false;
  return images_ == other.images_;
}

Derivation Derivation::weight_component(int i) const {
  Derivation r(gens_, degree_, trunc_);
  for (size_t g = 0; g < images_.size(); ++g)
    r.images_[g] = images_[g].component(i + 1, std::nullopt);
  return r;
}

int Derivation::min_weight_level() const {
  int lvl = -1;
  for (const auto& img : images_) {
    if (img.is_zero()) continue;
    int l = img.min_weight() - 1;
    if (lvl < 0 || l < lvl) lvl = l;
  }
  return lvl;
}

int Derivation::max_weight_level() const {
  int lvl = -1;
  for (const auto& img : images_) {
    if (img.is_zero()) continue;
    int l = img.max_weight() - 1;
    if (l > lvl) lvl = l;
  }
  return lvl;
}

bool Derivation::is_weight_raising() const {
  for (const auto& img : images_)
    if (!img.is_zero() && img.min_weight() < 2) return false;
  return true;
}

std::string Derivation::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (size_t g = 0; g < images_.size(); ++g) {
    if (images_[g].is_zero()) continue;
    if (!first) os << "; ";
    first = false;
    os << gens_->name(g) << " -> " << images_[g].to_string();
  }
  return first ? "0" : os.str();
}

Derivation derivation_bracket(const Derivation& d1, const Derivation& d2) {
  if (!(*d1.generators() == *d2.generators()))
    throw InvalidInput("mismatched generator sets");
  if (d1.trunc().N != d2.trunc().N) throw InvalidInput("mismatched truncations");
  Derivation r(d1.generators(), d1.degree() + d2.degree(), d1.trunc());
  int sign = ((d1.degree() * d2.degree()) % 2 == 0) ? 1 : -1;
  for (size_t g = 0; g < d1.generators()->size(); ++g) {
    TensorElement img = d1.apply(d2.image(g)) - Scalar(sign) * d2.apply(d1.image(g));
    r.set_image(g, img);
  }
  return r;
}

ChenCheckReport check_chen_differential(const Derivation& delta) {
  ChenCheckReport rep;
  if (delta.degree() != -1) {
    rep.degree_ok = false;
    rep.ok = false;
    rep.detail = "degree is " + std::to_string(delta.degree()) + ", expected -1";
    return rep;
  }
  const auto& gens = *delta.generators();
  for (size_t g = 0; g < gens.size(); ++g) {
    const auto& img = delta.image(g);
    if (!img.is_zero() && img.min_weight() < 2) {
      rep.weight_ok = false;
      rep.ok = false;
      rep.detail = "image of " + gens.name(g) + " has weight < 2";
      return rep;
    }
  }
  for (size_t g = 0; g < gens.size(); ++g) {
    TensorElement sq = delta.apply(delta.image(g));
    if (!sq.is_zero()) {
      rep.square_ok = false;
      rep.ok = false;
      rep.detail = "delta^2(" + gens.name(g) + ") = " + sq.to_string();
      return rep;
    }
  }
  return rep;
}

ChenDifferential::ChenDifferential(Derivation d) : d_(std::move(d)) {
  auto rep = check_chen_differential(d_);
  if (!rep.ok) throw InvalidInput("not a Chen differential: " + rep.detail);
}

bool ChenDifferential::pure_weight() const {
  for (size_t g = 0; g < d_.generators()->size(); ++g) {
    const auto& img = d_.image(g);
    if (!img.is_zero() && (img.min_weight() != 2 || img.max_weight() != 2)) return false;
  }
  return true;
}

int ChenDifferential::max_image_weight() const {
  int m = 2;
  for (size_t g = 0; g < d_.generators()->size(); ++g) {
    const auto& img = d_.image(g);
    if (!img.is_zero()) m = std::max(m, img.max_weight());
  }
  return m;
}

}  // namespace atlas
