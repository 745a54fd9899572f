#include "atlas/tensor.hpp"

#include <sstream>

namespace atlas {

void TensorElement::add_term(const Word& w, const Scalar& c) {
  if (c == 0) return;
  for (auto g : w)
    if (g >= gens_->size()) throw InvalidInput("word refers to unknown generator index");
  auto [it, inserted] = terms_.emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Scalar TensorElement::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Scalar(0) : it->second;
}

TensorElement& TensorElement::operator+=(const TensorElement& other) {
  require_same_generators(*this, other);
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& other) {
  require_same_generators(*this, other);
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

TensorElement& TensorElement::operator*=(const Scalar& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

bool TensorElement::operator==(const TensorElement& other) const {
  return *gens_ == *other.gens_ && terms_ == other.terms_;
}

int TensorElement::word_degree(const Word& w) const {
  int d = 0;
  for (auto g : w) d += gens_->degree(g);
  return d;
}

std::optional<int> TensorElement::homogeneous_degree() const {
  std::optional<int> deg;
  for (const auto& [w, c] : terms_) {
    int d = word_degree(w);
    if (!deg)
      deg = d;
    else if (*deg != d)
      return std::nullopt;
  }
  return deg ? deg : std::optional<int>(0);
}

std::optional<int> TensorElement::homogeneous_weight() const {
  std::optional<int> wt;
  for (const auto& [w, c] : terms_) {
    int l = static_cast<int>(w.size());
    if (!wt)
      wt = l;
    else if (*wt != l)
      return std::nullopt;
  }
  return wt ? wt : std::optional<int>(0);
}

TensorElement TensorElement::component(std::optional<int> weight,
                                       std::optional<int> degree) const {
  TensorElement r(gens_);
  for (const auto& [w, c] : terms_) {
    if (weight && static_cast<int>(w.size()) != *weight) continue;
    if (degree && word_degree(w) != *degree) continue;
    r.add_term(w, c);
  }
  return r;
}

int TensorElement::max_weight() const {
  return terms_.empty() ? 0 : static_cast<int>(terms_.rbegin()->first.size());
}

int TensorElement::min_weight() const {
  return terms_.empty() ? 0 : static_cast<int>(terms_.begin()->first.size());
}

TensorElement TensorElement::truncated(const WeightTruncation& trunc) const {
  TensorElement r(gens_);
  for (const auto& [w, c] : terms_) {
    if (static_cast<int>(w.size()) <= trunc.N) r.add_term(w, c);
  }
  return r;
}

std::string TensorElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << format_scalar(c) << "*";
    if (w.empty()) os << "1";
    for (size_t i = 0; i < w.size(); ++i) {
      if (i) os << ".";
      os << gens_->name(w[i]);
    }
  }
  return os.str();
}

void require_same_generators(const TensorElement& a, const TensorElement& b) {
  if (!(*a.generators() == *b.generators()))
    throw InvalidInput("mismatched generator sets");
}

TensorElement make_generator_element(const GeneratorSetPtr& gens, size_t index) {
  TensorElement r(gens);
  r.add_term({static_cast<uint32_t>(index)}, 1);
  return r;
}

TensorElement tensor_concat(const TensorElement& a, const TensorElement& b,
                            const WeightTruncation& trunc) {
  require_same_generators(a, b);
  TensorElement r(a.generators());
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) {
      if (static_cast<int>(wa.size() + wb.size()) > trunc.N) continue;
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      r.add_term(w, ca * cb);
    }
  }
  return r;
}

TensorElement lie_bracket(const TensorElement& a, const TensorElement& b,
                          const WeightTruncation& trunc) {
  require_same_generators(a, b);
  TensorElement r(a.generators());
  // Split into homogeneous degree components so the Koszul sign is defined.
  std::map<int, TensorElement> as, bs;
  for (const auto& [w, c] : a.terms()) {
    int d = a.word_degree(w);
    as.try_emplace(d, a.generators()).first->second.add_term(w, c);
  }
  for (const auto& [w, c] : b.terms()) {
    int d = b.word_degree(w);
    bs.try_emplace(d, b.generators()).first->second.add_term(w, c);
  }
  for (const auto& [da, pa] : as) {
    for (const auto& [db, pb] : bs) {
      TensorElement ab = tensor_concat(pa, pb, trunc);
      TensorElement ba = tensor_concat(pb, pa, trunc);
      int sign = ((da * db) % 2 == 0) ? 1 : -1;
      r += ab;
      r -= Scalar(sign) * ba;
    }
  }
  return r;
}

ReducedCoproduct reduced_coproduct(const TensorElement& a) {
  ReducedCoproduct cp;
  const auto& gens = *a.generators();
  for (const auto& [w, c] : a.terms()) {
    size_t n = w.size();
    if (n < 2) continue;
    // Unshuffle: for each proper nonempty subset S of positions, the term
    // (w|S (x) w|S^c) with the Koszul sign of moving S-letters to the front.
    for (uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
      Word left, right;
      long sign_exp = 0;
      int pending_right_odd = 0;  // number of odd-degree letters already in S^c
      for (size_t i = 0; i < n; ++i) {
        int deg = gens.degree(w[i]);
        if (mask & (1u << i)) {
          // This S-letter jumps over every earlier S^c-letter.
          sign_exp += static_cast<long>(deg % 2) * pending_right_odd;
          left.push_back(w[i]);
        } else {
          pending_right_odd += deg % 2;
          right.push_back(w[i]);
        }
      }
      Scalar term = (sign_exp % 2 == 0) ? c : -c;
      auto key = std::make_pair(left, right);
      auto [it, inserted] = cp.terms.emplace(key, term);
      if (!inserted) {
        it->second += term;
        if (it->second == 0) cp.terms.erase(it);
      }
    }
  }
  return cp;
}

bool is_primitive(const TensorElement& a) { return reduced_coproduct(a).is_primitive(); }

}  // namespace atlas
