#include "atlas/lie_basis.hpp"

#include <algorithm>

namespace atlas {

LieBasis::LieBasis(GeneratorSetPtr gens) : gens_(std::move(gens)) {
  if (!gens_) throw InvalidInput("null generator set");
}

const std::vector<Word>& LieBasis::words(int weight, int degree) {
  auto wit = words_.find(weight);
  if (wit == words_.end()) {
    // Enumerate all words of this weight once, bucketed by degree.
    std::map<int, std::vector<Word>> buckets;
    size_t q = gens_->size();
    Word w(weight, 0);
    bool done = (weight == 0);
    while (!done) {
      int d = 0;
      for (auto g : w) d += gens_->degree(g);
      buckets[d].push_back(w);
      // lexicographic increment
      int i = weight - 1;
      while (i >= 0) {
        if (++w[i] < q) break;
        w[i] = 0;
        --i;
      }
      if (i < 0) done = true;
    }
    wit = words_.emplace(weight, std::move(buckets)).first;
  }
  static const std::vector<Word> empty;
  auto dit = wit->second.find(degree);
  return dit == wit->second.end() ? empty : dit->second;
}

std::vector<int> LieBasis::degrees_present(int weight) {
  words(weight, 0);  // force enumeration
  std::vector<int> degs;
  for (const auto& [d, ws] : words_.at(weight)) degs.push_back(d);
  return degs;
}

size_t LieBasis::word_index(const Word& w, int weight, int degree) {
  auto key = std::make_pair(weight, degree);
  auto it = word_index_.find(key);
  if (it == word_index_.end()) {
    std::map<Word, size_t> idx;
    const auto& ws = words(weight, degree);
    for (size_t i = 0; i < ws.size(); ++i) idx.emplace(ws[i], i);
    it = word_index_.emplace(key, std::move(idx)).first;
  }
  auto f = it->second.find(w);
  if (f == it->second.end()) throw InvalidInput("word outside (weight, degree) block");
  return f->second;
}

Vec LieBasis::word_vector(const TensorElement& elt, int weight, int degree) {
  const auto& ws = words(weight, degree);
  Vec v(ws.size(), Scalar(0));
  for (const auto& [w, c] : elt.terms()) {
    if (static_cast<int>(w.size()) != weight || elt.word_degree(w) != degree)
      throw InvalidInput("element is not (weight, degree)-homogeneous");
    v[word_index(w, weight, degree)] = c;
  }
  return v;
}

LieBasis::Component& LieBasis::component_impl(int weight, int degree) {
  auto key = std::make_pair(weight, degree);
  auto it = comps_.find(key);
  if (it != comps_.end()) return it->second;

  const auto& ws = words(weight, degree);
  Component comp(ws.size());
  if (weight == 1) {
    for (size_t g = 0; g < gens_->size(); ++g) {
      if (gens_->degree(g) != degree) continue;
      TensorElement e = make_generator_element(gens_, g);
      comp.span.insert(word_vector(e, weight, degree));
    }
  } else if (!ws.empty()) {
    // L_w = [W, L_{w-1}]: bracket each generator against the lower basis.
    for (size_t g = 0; g < gens_->size(); ++g) {
      int dg = gens_->degree(g);
      int lower_deg = degree - dg;
      auto& lower = component_impl(weight - 1, lower_deg);
      for (const auto& b : lower.basis) {
        Vec v(ws.size(), Scalar(0));
        int sign = (dg % 2 != 0 && ((lower_deg % 2) + 2) % 2 != 0) ? -1 : 1;
        // [g, b] = g.b - (-1)^{|g||b|} b.g
        for (const auto& [u, c] : b.terms()) {
          Word gu;
          gu.reserve(u.size() + 1);
          gu.push_back(static_cast<uint32_t>(g));
          gu.insert(gu.end(), u.begin(), u.end());
          v[word_index(gu, weight, degree)] += c;
          Word ug = u;
          ug.push_back(static_cast<uint32_t>(g));
          v[word_index(ug, weight, degree)] -= Scalar(sign) * c;
        }
        comp.span.insert(std::move(v));
      }
    }
  }
  for (const auto& row : comp.span.rows()) {
    TensorElement e(gens_);
    for (size_t i = 0; i < row.size(); ++i)
      if (row[i] != 0) e.add_term(ws[i], row[i]);
    comp.basis.push_back(std::move(e));
  }
  return comps_.emplace(key, std::move(comp)).first->second;
}

const std::vector<TensorElement>& LieBasis::component(int weight, int degree) {
  if (weight < 1) throw InvalidInput("lie component weight must be >= 1");
  return component_impl(weight, degree).basis;
}

size_t LieBasis::dimension(int weight, int degree) {
  return component(weight, degree).size();
}

std::optional<Vec> LieBasis::coordinates(const TensorElement& elt, int weight, int degree) {
  auto& comp = component_impl(weight, degree);
  return comp.span.coordinates(word_vector(elt, weight, degree));
}

TensorElement LieBasis::from_coordinates(const Vec& coords, int weight, int degree) {
  auto& comp = component_impl(weight, degree);
  if (coords.size() != comp.basis.size())
    throw InvalidInput("coordinate vector has wrong dimension");
  TensorElement e(gens_);
  for (size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] == 0) continue;
    e += coords[i] * comp.basis[i];
  }
  return e;
}

void LieBasis::verify_component(int weight, int degree) {
  for (const auto& b : component(weight, degree))
    if (!is_primitive(b)) throw InvalidInput("non-primitive basis vector");
}

LieComponentResult lie_component_basis(const GeneratorSetPtr& gens, int weight,
                                       std::optional<int> degree,
                                       const WeightTruncation& trunc) {
  if (weight < 1) throw InvalidInput("weight must be positive");
  if (weight > trunc.N) throw InvalidInput("weight exceeds truncation bound N");
  LieBasis lb(gens);
  LieComponentResult res;
  res.weight = weight;
  res.degree = degree;
  res.dimension = 0;
  if (degree) {
    const auto& basis = lb.component(weight, *degree);
    res.basis = basis;
    res.dimension = basis.size();
  } else {
    for (int d : lb.degrees_present(weight)) {
      const auto& basis = lb.component(weight, d);
      res.basis.insert(res.basis.end(), basis.begin(), basis.end());
      res.dimension += basis.size();
    }
  }
  return res;
}

long witt_dimension(long q, long n) {
  if (n < 1) throw InvalidInput("witt dimension needs n >= 1");
  // (1/n) sum_{d | n} mu(d) q^{n/d}
  auto mobius = [](long m) {
    long mu = 1;
    for (long p = 2; p * p <= m; ++p) {
      if (m % p == 0) {
        m /= p;
        if (m % p == 0) return 0L;
        mu = -mu;
      }
    }
    if (m > 1) mu = -mu;
    return mu;
  };
  mpz_class total = 0;
  for (long d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    long mu = mobius(d);
    if (mu == 0) continue;
    mpz_class term;
    mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(q),
                  static_cast<unsigned long>(n / d));
    total += mu * term;
  }
  mpz_class res = total / n;
  return res.get_si();
}

}  // namespace atlas
