#include "atlas/cinfty.hpp"

#include <algorithm>
#include <sstream>

namespace atlas {

size_t GradedBasis::index_of(const std::string& name) const {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  throw InvalidInput("unknown basis element: " + name);
}

void GradedBasis::validate() const {
  if (names.empty()) throw InvalidInput("empty graded basis");
  if (names.size() != degrees.size())
    throw InvalidInput("basis names and degrees differ in length");
  for (size_t i = 0; i < names.size(); ++i) {
    if (names[i].empty()) throw InvalidInput("empty basis name");
    if (degrees[i] < 1)
      throw InvalidInput("basis degrees must be >= 1 (reduced part): " + names[i]);
    for (size_t j = i + 1; j < names.size(); ++j)
      if (names[i] == names[j]) throw InvalidInput("duplicate basis name: " + names[i]);
  }
}

CInftyStructure::CInftyStructure(GradedBasis basis, bool minimal)
    : basis_(std::move(basis)), minimal_(minimal) {
  basis_.validate();
}

size_t CInftyStructure::max_arity() const {
  size_t k = 2;
  for (const auto& [in, out] : terms_) k = std::max(k, in.size());
  return k;
}

void CInftyStructure::add_term(const std::vector<size_t>& in, size_t out,
                               const Scalar& coeff) {
  if (in.empty()) throw InvalidInput("product needs at least one input");
  if (minimal_ && in.size() == 1)
    throw InvalidInput("minimal structure cannot carry a unary product");
  if (out >= basis_.size()) throw InvalidInput("output index out of range");
  int want = 2 - static_cast<int>(in.size());
  for (size_t a : in) {
    if (a >= basis_.size()) throw InvalidInput("input index out of range");
    want += basis_.degrees[a];
  }
  if (basis_.degrees[out] != want)
    throw InvalidInput("product term violates the degree rule (arity k has degree 2-k)");
  auto it = terms_.find(in);
  if (it == terms_.end()) it = terms_.emplace(in, Vec(basis_.size(), Scalar(0))).first;
  it->second[out] += coeff;
  bool all_zero = true;
  for (const auto& c : it->second)
    if (c != 0) { all_zero = false; break; }
  if (all_zero) terms_.erase(it);
}

Vec CInftyStructure::product(const std::vector<size_t>& in) const {
  auto it = terms_.find(in);
  if (it != terms_.end()) return it->second;
  return Vec(basis_.size(), Scalar(0));
}

bool CInftyStructure::operator==(const CInftyStructure& other) const {
  return basis_.names == other.basis_.names && basis_.degrees == other.basis_.degrees &&
         minimal_ == other.minimal_ && terms_ == other.terms_;
}

namespace {

std::string tuple_names(const GradedBasis& b, const std::vector<size_t>& in) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < in.size(); ++i) os << (i ? "," : "") << b.names[in[i]];
  os << ")";
  return os.str();
}

/// Shifted (bar-construction) degree of a basis element.
int sdeg(const GradedBasis& b, size_t a) { return b.degrees[a] - 1; }

/// eta = sum_j (k-j) |s a_j|, the suspension sign of the dictionary.
int eta_sign(const GradedBasis& b, const std::vector<size_t>& in) {
  int e = 0;
  size_t k = in.size();
  for (size_t j = 0; j < k; ++j) e += static_cast<int>(k - 1 - j) * sdeg(b, in[j]);
  return e % 2 == 0 ? 1 : -1;
}

/// Raw generator images of the dual bar differential, no primitivity check.
std::vector<TensorElement> raw_delta_images(const CInftyStructure& m,
                                            const GeneratorSetPtr& gens,
                                            const WeightTruncation& trunc) {
  std::vector<TensorElement> images(gens->size(), TensorElement(gens));
  for (const auto& [in, out] : m.terms()) {
    if (static_cast<int>(in.size()) > trunc.N) continue;
    Word w(in.begin(), in.end());
    int sign = eta_sign(m.basis(), in);
    for (size_t c = 0; c < out.size(); ++c)
      if (out[c] != 0) images[c].add_term(w, Scalar(sign) * out[c]);
  }
  return images;
}

}  // namespace

GeneratorSetPtr suspended_generators(const GradedBasis& basis) {
  basis.validate();
  std::vector<Generator> gs;
  for (size_t i = 0; i < basis.size(); ++i)
    gs.push_back({basis.names[i], basis.degrees[i] - 1});
  return make_generators(gs);
}

CInftyCheckReport check_cinfty(const CInftyStructure& m) {
  CInftyCheckReport rep;
  const auto& b = m.basis();
  size_t q = b.size();

  // Shuffle conditions: for every arity with a nonzero product, the signed
  // sum over (j, k-j)-shuffles of every basis tuple must vanish.
  std::vector<size_t> arities;
  for (const auto& [in, out] : m.terms())
    if (std::find(arities.begin(), arities.end(), in.size()) == arities.end())
      arities.push_back(in.size());
  for (size_t k : arities) {
    if (k < 2) continue;
    std::vector<size_t> tuple(k, 0);
    while (true) {
      for (size_t j = 1; j < k && rep.shuffle_ok; ++j) {
        // choose positions of the first block among 1..k, order-preserving
        Vec total(q, Scalar(0));
        std::vector<bool> pick(k, false);
        std::fill(pick.begin(), pick.begin() + j, true);
        do {
          std::vector<size_t> shuffled;
          std::vector<size_t> block1, block2;
          for (size_t p = 0; p < k; ++p) (pick[p] ? block1 : block2).push_back(p);
          size_t i1 = 0, i2 = 0;
          int sign = 0;  // exponent
          // interleave: original order inside each block is (a_1..a_j),
          // (a_{j+1}..a_k); pick[] marks where block-1 entries go.
          for (size_t p = 0; p < k; ++p) {
            if (pick[p]) {
              shuffled.push_back(tuple[i1]);
              // block-1 element jumped over the block-2 elements already
              // placed: Koszul sign on shifted degrees
              for (size_t t = 0; t < i2; ++t)
                sign += sdeg(b, tuple[i1]) * sdeg(b, tuple[j + t]);
              ++i1;
            } else {
              shuffled.push_back(tuple[j + i2]);
              ++i2;
            }
          }
          Vec val = m.product(shuffled);
          Scalar s(sign % 2 == 0 ? 1 : -1);
          for (size_t c = 0; c < q; ++c) total[c] += s * val[c];
        } while (std::prev_permutation(pick.begin(), pick.end()));
        for (size_t c = 0; c < q; ++c) {
          if (total[c] != 0) {
            rep.shuffle_ok = false;
            rep.ok = false;
            rep.detail = "shuffle condition fails: arity " + std::to_string(k) +
                         ", split " + std::to_string(j) + ", inputs " +
                         tuple_names(b, tuple);
            break;
          }
        }
      }
      if (!rep.shuffle_ok) break;
      // next tuple
      size_t p = k;
      while (p > 0) {
        if (++tuple[p - 1] < q) break;
        tuple[p - 1] = 0;
        --p;
      }
      if (p == 0) break;
    }
    if (!rep.shuffle_ok) break;
  }

  // A-infinity relations, equivalently: the raw dual differential squares
  // to zero. Arity 2K-1 bounds the word length of delta^2 on a generator,
  // so this truncation loses nothing.
  int bound = std::max<int>(2 * static_cast<int>(m.max_arity()) - 1, 2);
  WeightTruncation wide(bound);
  auto gens = suspended_generators(b);
  auto images = raw_delta_images(m, gens, wide);
  for (size_t c = 0; c < q && rep.ainfty_ok; ++c) {
    TensorElement sq = leibniz_apply(gens, images, -1, images[c], wide);
    if (!sq.is_zero()) {
      rep.ainfty_ok = false;
      rep.ok = false;
      rep.detail = "A-infinity relation fails on " + b.names[c] + ": residual " +
                   sq.to_string();
    }
  }
  return rep;
}

ChenDifferential chen_delta_from_cinfty(const CInftyStructure& m,
                                        const WeightTruncation& trunc) {
  if (!m.minimal()) throw InvalidInput("dictionary requires a minimal structure");
  auto gens = suspended_generators(m.basis());
  auto images = raw_delta_images(m, gens, trunc);
  Derivation d(gens, -1, trunc);
  for (size_t c = 0; c < gens->size(); ++c) d.set_image(c, images[c]);
  return ChenDifferential(d);
}

CInftyStructure cinfty_from_delta(const ChenDifferential& delta, const GradedBasis& basis) {
  auto gens = suspended_generators(basis);
  if (!(*gens == *delta.derivation().generators()))
    throw InvalidInput("basis does not match the differential's generators");
  CInftyStructure m(basis, true);
  for (size_t c = 0; c < gens->size(); ++c) {
    for (const auto& [w, coeff] : delta.derivation().image(c).terms()) {
      std::vector<size_t> in(w.begin(), w.end());
      m.add_term(in, c, Scalar(eta_sign(basis, in)) * coeff);
    }
  }
  return m;
}

Vec DGAModel::product(size_t i, size_t j) const {
  auto it = products.find({i, j});
  if (it != products.end()) return it->second;
  return Vec(basis.size(), Scalar(0));
}

void DGAModel::validate() const {
  basis.validate();
  size_t q = basis.size();
  if (d.rows() != q || d.cols() != q) throw InvalidInput("differential matrix shape");
  for (size_t j = 0; j < q; ++j)
    for (size_t i = 0; i < q; ++i)
      if (d.at(i, j) != 0 && basis.degrees[i] != basis.degrees[j] + 1)
        throw InvalidInput("differential is not of cohomological degree +1");
  if (!(d * d == MatQ(q, q))) throw InvalidInput("differential does not square to zero");
  for (const auto& [ij, vec] : products) {
    if (ij.first >= q || ij.second >= q || vec.size() != q)
      throw InvalidInput("product table indices out of range");
    int deg = basis.degrees[ij.first] + basis.degrees[ij.second];
    for (size_t c = 0; c < q; ++c)
      if (vec[c] != 0 && basis.degrees[c] != deg)
        throw InvalidInput("product is not degree-additive");
  }
  auto lin_product = [&](const Vec& u, const Vec& v) {
    Vec r(q, Scalar(0));
    for (size_t i = 0; i < q; ++i) {
      if (u[i] == 0) continue;
      for (size_t j = 0; j < q; ++j) {
        if (v[j] == 0) continue;
        Vec p = product(i, j);
        for (size_t c = 0; c < q; ++c) r[c] += u[i] * v[j] * p[c];
      }
    }
    return r;
  };
  auto unit_vec = [&](size_t i) {
    Vec v(q, Scalar(0));
    v[i] = 1;
    return v;
  };
  auto is_zero = [](const Vec& v) {
    for (const auto& c : v)
      if (c != 0) return false;
    return true;
  };
  for (size_t i = 0; i < q; ++i)
    for (size_t j = 0; j < q; ++j) {
      // graded commutativity
      Vec comm = product(i, j);
      Vec swap = product(j, i);
      int s = (basis.degrees[i] * basis.degrees[j]) % 2 == 0 ? 1 : -1;
      for (size_t c = 0; c < q; ++c) comm[c] -= Scalar(s) * swap[c];
      if (!is_zero(comm)) throw InvalidInput("product is not graded-commutative");
      // Leibniz: d(e_i e_j) = d(e_i) e_j + (-1)^{deg i} e_i d(e_j)
      Vec lhs = d.apply(product(i, j));
      Vec di(q, Scalar(0)), dj(q, Scalar(0));
      for (size_t r = 0; r < q; ++r) {
        di[r] = d.at(r, i);
        dj[r] = d.at(r, j);
      }
      Vec rhs = lin_product(di, unit_vec(j));
      Vec second = lin_product(unit_vec(i), dj);
      int si = basis.degrees[i] % 2 == 0 ? 1 : -1;
      for (size_t c = 0; c < q; ++c) rhs[c] += Scalar(si) * second[c];
      for (size_t c = 0; c < q; ++c) lhs[c] -= rhs[c];
      if (!is_zero(lhs)) throw InvalidInput("differential fails the Leibniz rule");
      // associativity
      for (size_t k = 0; k < q; ++k) {
        Vec left = lin_product(product(i, j), unit_vec(k));
        Vec right = lin_product(unit_vec(i), product(j, k));
        for (size_t c = 0; c < q; ++c) left[c] -= right[c];
        if (!is_zero(left)) throw InvalidInput("product is not associative");
      }
    }
}

DGAModel formal_dga(const CInftyStructure& m) {
  DGAModel a;
  a.basis = m.basis();
  a.d = MatQ(a.basis.size(), a.basis.size());
  for (const auto& [in, out] : m.terms())
    if (in.size() == 2) a.products[{in[0], in[1]}] = out;
  a.validate();
  return a;
}

}  // namespace atlas
