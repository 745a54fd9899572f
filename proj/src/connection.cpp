#include "atlas/connection.hpp"

#include <sstream>

namespace atlas {

TwistedElement::TwistedElement(GradedBasis basis, GeneratorSetPtr gens,
                               WeightTruncation trunc)
    : basis_(std::move(basis)), gens_(std::move(gens)), trunc_(trunc) {
  basis_.validate();
  if (!gens_) throw InvalidInput("null generator set");
  comps_.assign(basis_.size() + 1, TensorElement(gens_));
}

bool TwistedElement::is_zero() const {
  for (const auto& c : comps_)
    if (!c.is_zero()) return false;
  return true;
}

TwistedElement& TwistedElement::operator+=(const TwistedElement& other) {
  if (basis_.names != other.basis_.names || !(*gens_ == *other.gens_))
    throw InvalidInput("twisted element sum needs matching spaces");
  for (size_t s = 0; s < comps_.size(); ++s)
    comps_[s] = (comps_[s] + other.comps_[s]).truncated(trunc_);
  return *this;
}

TwistedElement& TwistedElement::operator-=(const TwistedElement& other) {
  if (basis_.names != other.basis_.names || !(*gens_ == *other.gens_))
    throw InvalidInput("twisted element difference needs matching spaces");
  for (size_t s = 0; s < comps_.size(); ++s)
    comps_[s] = (comps_[s] - other.comps_[s]).truncated(trunc_);
  return *this;
}

TwistedElement& TwistedElement::operator*=(const Scalar& c) {
  for (auto& comp : comps_) comp *= c;
  return *this;
}

bool TwistedElement::operator==(const TwistedElement& other) const {
  if (basis_.names != other.basis_.names || !(*gens_ == *other.gens_)) return false;
  for (size_t s = 0; s < comps_.size(); ++s)
    if (!(comps_[s] == other.comps_[s])) return false;
  return true;
}

bool TwistedElement::is_total_degree(int t) const {
  for (size_t s = 0; s < comps_.size(); ++s) {
    for (const auto& [w, c] : comps_[s].terms())
      if (comps_[s].word_degree(w) - slot_codegree(s) != t) return false;
  }
  return true;
}

TwistedElement TwistedElement::weight_part(int w) const {
  TwistedElement r(basis_, gens_, trunc_);
  for (size_t s = 0; s < comps_.size(); ++s)
    r.comps_[s] = comps_[s].component(w, std::nullopt);
  return r;
}

std::string TwistedElement::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (size_t s = 0; s < comps_.size(); ++s) {
    if (comps_[s].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << (s == 0 ? std::string("1") : basis_.names[s - 1]) << " ox ("
       << comps_[s].to_string() << ")";
  }
  return first ? "0" : os.str();
}

TwistedElement twisted_bracket(const DGAModel& a, const TwistedElement& x,
                               const TwistedElement& y) {
  TwistedElement r(x.basis(), x.generators(), x.trunc());
  size_t q = x.basis().size();
  for (size_t sx = 0; sx < x.slots(); ++sx) {
    if (x.comp(sx).is_zero()) continue;
    for (size_t sy = 0; sy < y.slots(); ++sy) {
      if (y.comp(sy).is_zero()) continue;
      // product alpha * beta in A+ coordinates
      std::vector<std::pair<size_t, Scalar>> prod;
      if (sx == 0) {
        prod.emplace_back(sy, Scalar(1));
      } else if (sy == 0) {
        prod.emplace_back(sx, Scalar(1));
      } else {
        Vec p = a.product(sx - 1, sy - 1);
        for (size_t c = 0; c < q; ++c)
          if (p[c] != 0) prod.emplace_back(c + 1, p[c]);
      }
      if (prod.empty()) continue;
      int cb = y.slot_codegree(sy);
      // split xi into homological-degree components for the Koszul sign
      std::map<int, TensorElement> parts;
      for (const auto& [w, c] : x.comp(sx).terms()) {
        int d = x.comp(sx).word_degree(w);
        auto it = parts.find(d);
        if (it == parts.end()) it = parts.emplace(d, TensorElement(x.generators())).first;
        it->second.add_term(w, c);
      }
      for (const auto& [dxi, xi] : parts) {
        Scalar sign((dxi * cb) % 2 == 0 ? 1 : -1);
        TensorElement br = lie_bracket(xi, y.comp(sy), x.trunc());
        if (br.is_zero()) continue;
        for (const auto& [slot, coeff] : prod) r.comp(slot) += sign * coeff * br;
      }
    }
  }
  return r;
}

TwistedElement apply_dga_d(const DGAModel& a, const TwistedElement& x) {
  TwistedElement r(x.basis(), x.generators(), x.trunc());
  size_t q = x.basis().size();
  for (size_t s = 1; s < x.slots(); ++s) {
    if (x.comp(s).is_zero()) continue;
    for (size_t c = 0; c < q; ++c) {
      const Scalar& m = a.d.at(c, s - 1);
      if (m != 0) r.comp(c + 1) += m * x.comp(s);
    }
  }
  return r;
}

TwistedElement apply_delta(const ChenDifferential& delta, const TwistedElement& x) {
  TwistedElement r(x.basis(), x.generators(), x.trunc());
  for (size_t s = 0; s < x.slots(); ++s) {
    if (x.comp(s).is_zero()) continue;
    Scalar sign((x.slot_codegree(s) + 1) % 2 == 0 ? 1 : -1);
    r.comp(s) += sign * delta.apply(x.comp(s));
  }
  return r;
}

FormalConnection::FormalConnection(GradedBasis b, std::vector<TensorElement> om,
                                   ChenDifferential d, WeightTruncation t)
    : basis(std::move(b)), omega(std::move(om)), delta(std::move(d)), trunc(t) {
  basis.validate();
  if (omega.size() != basis.size())
    throw InvalidInput("connection needs one component per basis element");
  for (size_t i = 0; i < omega.size(); ++i) {
    if (omega[i].is_zero()) continue;
    if (!is_primitive(omega[i]))
      throw InvalidInput("connection component is not a Lie element: " + basis.names[i]);
    auto deg = omega[i].homogeneous_degree();
    if (!deg || *deg != basis.degrees[i] - 1)
      throw InvalidInput("connection component has wrong total degree: " + basis.names[i]);
  }
}

TwistedElement FormalConnection::as_element() const {
  TwistedElement r(basis, delta.derivation().generators(), trunc);
  for (size_t i = 0; i < omega.size(); ++i) r.comp(i + 1) += omega[i];
  return r;
}

FormalConnection canonical_formal_connection(const CInftyStructure& m,
                                             const WeightTruncation& trunc) {
  auto rep = check_cinfty(m);
  if (!rep.ok) throw InvalidInput("invalid C-infinity structure: " + rep.detail);
  ChenDifferential delta = chen_delta_from_cinfty(m, trunc);
  auto gens = delta.derivation().generators();
  std::vector<TensorElement> omega;
  for (size_t i = 0; i < m.basis().size(); ++i)
    omega.push_back(make_generator_element(gens, i));
  return FormalConnection(m.basis(), std::move(omega), std::move(delta), trunc);
}

McCheckReport mc_check(const DGAModel& a, const FormalConnection& conn) {
  McCheckReport rep;
  if (a.basis.names != conn.basis.names || a.basis.degrees != conn.basis.degrees)
    throw InvalidInput("connection and algebra bases differ");
  TwistedElement w = conn.as_element();
  TwistedElement curv = apply_dga_d(a, w) + apply_delta(conn.delta, w) +
                        Scalar(1, 2) * twisted_bracket(a, w, w);
  if (!curv.is_zero()) {
    rep.ok = false;
    rep.detail = "curvature = " + curv.to_string();
  }
  return rep;
}

}  // namespace atlas
