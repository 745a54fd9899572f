#include "atlas/cochain.hpp"

#include <algorithm>

namespace atlas {

namespace {

size_t lead_vertex_of(const FiniteSimplicialSet& k, SimplexRef r) {
  for (int m = r.total_dim(); m >= 1; --m) r = k.face(r, m);
  return r.index;
}

/// c evaluated on a possibly degenerate face (zero on degenerates).
Vec value_on(const FiniteSimplicialSet& k, const LocalSystem& m, const Cochain& c,
             const SimplexRef& f) {
  if (f.total_dim() != c.degree) throw InvalidInput("cochain degree mismatch");
  if (f.degenerate()) return Vec(m.fiber_dim.at(lead_vertex_of(k, f)), Scalar(0));
  return c.values.at(f.index);
}

std::vector<size_t> flat_offsets(const FiniteSimplicialSet& k, const LocalSystem& m, int n) {
  std::vector<size_t> off(k.count(n) + 1, 0);
  for (size_t i = 0; i < k.count(n); ++i)
    off[i + 1] = off[i] + m.fiber_dim.at(k.leading_vertex(n, i));
  return off;
}

Vec flatten(const FiniteSimplicialSet& k, const LocalSystem& m, const Cochain& c) {
  auto off = flat_offsets(k, m, c.degree);
  Vec v(off.back(), Scalar(0));
  for (size_t i = 0; i < c.values.size(); ++i)
    for (size_t t = 0; t < c.values[i].size(); ++t) v[off[i] + t] = c.values[i][t];
  return v;
}

Cochain unflatten(const FiniteSimplicialSet& k, const LocalSystem& m, int n, const Vec& v) {
  auto off = flat_offsets(k, m, n);
  Cochain c = zero_cochain(k, m, n);
  for (size_t i = 0; i < c.values.size(); ++i)
    for (size_t t = 0; t < c.values[i].size(); ++t) c.values[i][t] = v[off[i] + t];
  return c;
}

/// Matrix of the twisted coboundary C^n -> C^{n+1} on flattened cochains.
MatQ coboundary_matrix(const FiniteSimplicialSet& k, const LocalSystem& m, int n) {
  size_t cols = flat_offsets(k, m, n).back();
  size_t rows = n + 1 <= k.dimension() ? flat_offsets(k, m, n + 1).back() : 0;
  MatQ a(rows, cols);
  for (size_t col = 0; col < cols; ++col) {
    Vec e(cols, Scalar(0));
    e[col] = Scalar(1);
    Vec img = flatten(k, m, twisted_coboundary(unflatten(k, m, n, e), m, k));
    for (size_t r = 0; r < rows; ++r) a.at(r, col) = img[r];
  }
  return a;
}

}  // namespace

bool Cochain::is_zero() const {
  for (const auto& v : values)
    for (const auto& x : v)
      if (x != 0) return false;
  return true;
}

Cochain zero_cochain(const FiniteSimplicialSet& k, const LocalSystem& m, int n) {
  Cochain c;
  c.degree = n;
  for (size_t i = 0; i < k.count(n); ++i)
    c.values.emplace_back(m.fiber_dim.at(k.leading_vertex(n, i)), Scalar(0));
  return c;
}

void validate_cochain(const FiniteSimplicialSet& k, const LocalSystem& m, const Cochain& c) {
  if (c.degree < 0) throw InvalidInput("cochain degree must be nonnegative");
  if (c.values.size() != k.count(c.degree))
    throw InvalidInput("one value per nondegenerate simplex is required");
  for (size_t i = 0; i < c.values.size(); ++i)
    if (c.values[i].size() != m.fiber_dim.at(k.leading_vertex(c.degree, i)))
      throw InvalidInput("value on " + k.name(c.degree, i) +
                         " does not live in the fiber over its leading vertex");
}

Cochain twisted_coboundary(const Cochain& c, const LocalSystem& m,
                           const FiniteSimplicialSet& k) {
  validate_cochain(k, m, c);
  int n = c.degree;
  Cochain out = zero_cochain(k, m, n + 1);
  for (size_t x = 0; x < k.count(n + 1); ++x) {
    SimplexRef top{n + 1, x, {}};
    MatQ a = edge_matrix(k, m, k.leading_edge(n + 1, x));
    Vec acc = a.inverse()->apply(value_on(k, m, c, k.face(top, 0)));
    Scalar sign(-1);
    for (int i = 1; i <= n + 1; ++i, sign = -sign) {
      Vec term = value_on(k, m, c, k.face(top, i));
      for (size_t t = 0; t < acc.size(); ++t) acc[t] += sign * term[t];
    }
    out.values[x] = std::move(acc);
  }
  return out;
}

CohomologyResult local_cohomology(const FiniteSimplicialSet& k, const LocalSystem& m, int n) {
  validate_local_system(k, m);
  if (n < 0 || n > k.dimension())
    throw InvalidInput("cohomological degree outside the dimension range");
  CohomologyResult res;
  MatQ a = coboundary_matrix(k, m, n);
  auto kernel = a.kernel_basis();
  res.cocycle_dim = kernel.size();
  RowSpan image(a.cols());
  if (n >= 1) {
    MatQ b = coboundary_matrix(k, m, n - 1);
    for (size_t col = 0; col < b.cols(); ++col) {
      Vec v(b.rows(), Scalar(0));
      for (size_t r = 0; r < b.rows(); ++r) v[r] = b.at(r, col);
      image.insert(std::move(v));
    }
  }
  res.coboundary_dim = image.dim();
  RowSpan span(a.cols());
  for (size_t col = 0; col < image.dim(); ++col) span.insert(image.rows()[col]);
  for (const auto& v : kernel)
    if (span.insert(v)) res.representatives.push_back(unflatten(k, m, n, v));
  res.dim = res.representatives.size();
  return res;
}

ClassReduction class_reduce(const Cochain& c, const LocalSystem& m,
                            const FiniteSimplicialSet& k) {
  validate_local_system(k, m);
  validate_cochain(k, m, c);
  ClassReduction red;
  Cochain dc = twisted_coboundary(c, m, k);
  for (size_t i = 0; i < dc.values.size(); ++i)
    for (const auto& x : dc.values[i])
      if (x != 0) {
        red.is_cocycle = false;
        red.failing_simplex = k.name(dc.degree, i);
        return red;
      }
  Vec cv = flatten(k, m, c);
  if (c.degree >= 1) {
    MatQ b = coboundary_matrix(k, m, c.degree - 1);
    if (auto z = b.solve(cv)) {
      red.trivial = true;
      red.certificate = unflatten(k, m, c.degree - 1, *z);
      return red;
    }
  } else if (c.is_zero()) {
    red.trivial = true;
    return red;
  }
  auto h = local_cohomology(k, m, c.degree);
  std::vector<Vec> image_rows;
  if (c.degree >= 1) {
    MatQ b = coboundary_matrix(k, m, c.degree - 1);
    RowSpan image(b.rows());
    for (size_t col = 0; col < b.cols(); ++col) {
      Vec v(b.rows(), Scalar(0));
      for (size_t r = 0; r < b.rows(); ++r) v[r] = b.at(r, col);
      image.insert(std::move(v));
    }
    image_rows = image.rows();
  }
  size_t cols = image_rows.size() + h.representatives.size();
  MatQ mix(cv.size(), cols);
  for (size_t j = 0; j < image_rows.size(); ++j)
    for (size_t r = 0; r < cv.size(); ++r) mix.at(r, j) = image_rows[j][r];
  for (size_t j = 0; j < h.representatives.size(); ++j) {
    Vec v = flatten(k, m, h.representatives[j]);
    for (size_t r = 0; r < cv.size(); ++r) mix.at(r, image_rows.size() + j) = v[r];
  }
  auto z = mix.solve(cv);
  if (!z) throw InvalidInput("internal error: cocycle outside image + representatives");
  red.trivial = false;
  red.class_coords.assign(z->begin() + image_rows.size(), z->end());
  red.basis = h.representatives;
  return red;
}

DifferenceReport verify_difference(const Cochain& c0, const Cochain& c1, const Cochain& d,
                                   const LocalSystem& m, const FiniteSimplicialSet& k) {
  if (c0.degree != c1.degree || d.degree + 1 != c0.degree)
    throw InvalidInput("degree mismatch: expected deg d = deg c - 1");
  validate_cochain(k, m, c0);
  validate_cochain(k, m, c1);
  Cochain dd = twisted_coboundary(d, m, k);
  DifferenceReport rep;
  for (size_t i = 0; i < dd.values.size(); ++i)
    for (size_t t = 0; t < dd.values[i].size(); ++t)
      if (dd.values[i][t] != c1.values[i][t] - c0.values[i][t]) {
        rep.ok = false;
        rep.locus = k.name(dd.degree, i);
        return rep;
      }
  return rep;
}

namespace {

/// Face of x spanned by vertices a..b (both inclusive).
SimplexRef middle_face(const FiniteSimplicialSet& k, SimplexRef x, int a, int b) {
  while (x.total_dim() > b) x = k.face(x, x.total_dim());
  for (int t = 0; t < a; ++t) x = k.face(x, 0);
  return x;
}

}  // namespace

CupResult cup_characteristic(const MultiForm& psi, const Cochain& c, const LocalSystem& m,
                             const FiniteSimplicialSet& k) {
  validate_local_system(k, m);
  validate_cochain(k, m, c);
  if (psi.arity < 1) throw InvalidInput("form arity must be at least 1");
  if (c.degree < 1) throw InvalidInput("characteristic evaluation expects degree >= 1");
  size_t ref;
  if (m.has_trivialization()) {
    ref = m.trivialization.front().rows();
  } else {
    if (m.fiber_dim.empty()) throw InvalidInput("empty local system");
    ref = m.fiber_dim.front();
    for (size_t d : m.fiber_dim)
      if (d != ref)
        throw InvalidInput("vertex trivializations are required for unequal fibers");
  }
  for (const auto& term : psi.terms) {
    if (term.size() != psi.arity) throw InvalidInput("term arity mismatch");
    for (const auto& f : term)
      if (f.size() != ref) throw InvalidInput("functional does not match the reference fiber");
  }
  // G-invariance: compare the multilinear coefficient tensors of psi and
  // psi composed with each holonomy generator.
  for (size_t gi = 0; gi < m.holonomy.size(); ++gi) {
    const MatQ& h = m.holonomy[gi];
    std::vector<size_t> idx(psi.arity, 0);
    while (true) {
      Scalar plain(0), twisted(0);
      for (const auto& term : psi.terms) {
        Scalar p(1), t(1);
        for (size_t j = 0; j < psi.arity; ++j) {
          p *= term[j][idx[j]];
          Scalar dot(0);
          for (size_t r = 0; r < ref; ++r) dot += term[j][r] * h.at(r, idx[j]);
          t *= dot;
        }
        plain += p;
        twisted += t;
      }
      if (plain != twisted)
        throw InvalidInput("form is not invariant under holonomy generator " +
                           std::to_string(gi));
      size_t j = 0;
      while (j < psi.arity && ++idx[j] == ref) idx[j++] = 0;
      if (j == psi.arity) break;
      if (ref == 0) break;
    }
  }
  LocalSystem triv = trivial_system(k, 1);
  int q = c.degree;
  int total_degree = static_cast<int>(psi.arity) * q;
  CupResult res;
  res.cochain = zero_cochain(k, triv, total_degree);
  for (size_t x = 0; x < k.count(total_degree); ++x) {
    SimplexRef top{total_degree, x, {}};
    size_t lv = k.leading_vertex(total_degree, x);
    // Alexander-Whitney pieces, each transported back to the leading
    // vertex of the top simplex along its spine and trivialized there,
    // so that the diagonal invariance of psi applies.
    std::vector<Vec> args;
    bool vanish = false;
    MatQ path = MatQ::identity(m.fiber_dim.at(lv));
    int spine = 0;
    for (size_t j = 0; j < psi.arity && !vanish; ++j) {
      for (; spine < static_cast<int>(j) * q; ++spine)
        path = edge_matrix(k, m, middle_face(k, top, spine, spine + 1)) * path;
      SimplexRef piece = middle_face(k, top, j * q, (j + 1) * q);
      if (piece.degenerate()) {
        vanish = true;
        break;
      }
      Vec val = path.inverse()->apply(c.values.at(piece.index));
      if (m.has_trivialization()) val = m.trivialization[lv].apply(val);
      args.push_back(std::move(val));
    }
    if (vanish) continue;
    Scalar total(0);
    for (const auto& term : psi.terms) {
      Scalar prod(1);
      for (size_t j = 0; j < psi.arity; ++j) {
        Scalar dot(0);
        for (size_t t = 0; t < ref; ++t) dot += term[j][t] * args[j][t];
        prod *= dot;
      }
      total += prod;
    }
    res.cochain.values[x][0] = total;
  }
  res.cls = class_reduce(res.cochain, triv, k);
  return res;
}

}  // namespace atlas
