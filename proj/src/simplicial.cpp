#include "atlas/simplicial.hpp"

#include <algorithm>
#include <map>

namespace atlas {

namespace {

/// Normal form of s_a applied on top of a strictly descending word,
/// using s_i s_j = s_{j+1} s_i for i <= j.
std::vector<int> push_degeneracy(std::vector<int> word, int a) {
  std::vector<int> out;
  size_t k = 0;
  while (k < word.size() && a <= word[k]) {
    out.push_back(word[k] + 1);
    ++k;
  }
  out.push_back(a);
  out.insert(out.end(), word.begin() + k, word.end());
  return out;
}

}  // namespace

size_t FiniteSimplicialSet::add_simplex(int dim, std::string name,
                                        std::vector<SimplexRef> faces) {
  if (dim < 0) throw InvalidInput("simplex dimension must be nonnegative");
  if (dim == 0 && !faces.empty()) throw InvalidInput("a vertex has no faces");
  if (dim > 0 && faces.size() != static_cast<size_t>(dim) + 1)
    throw InvalidInput("a " + std::to_string(dim) + "-simplex needs " +
                       std::to_string(dim + 1) + " faces");
  for (const auto& f : faces) check_ref(f, dim - 1);
  if (static_cast<size_t>(dim) >= names_.size()) {
    names_.resize(dim + 1);
    faces_.resize(dim + 1);
  }
  for (const auto& n : names_[dim])
    if (n == name) throw InvalidInput("duplicate simplex name: " + name);
  names_[dim].push_back(std::move(name));
  faces_[dim].push_back(std::move(faces));
  return names_[dim].size() - 1;
}

size_t FiniteSimplicialSet::count(int dim) const {
  if (dim < 0 || static_cast<size_t>(dim) >= names_.size()) return 0;
  return names_[dim].size();
}

const std::string& FiniteSimplicialSet::name(int dim, size_t index) const {
  if (index >= count(dim)) throw InvalidInput("simplex index out of range");
  return names_[dim][index];
}

size_t FiniteSimplicialSet::index_of(int dim, const std::string& name) const {
  for (size_t k = 0; k < count(dim); ++k)
    if (names_[dim][k] == name) return k;
  throw InvalidInput("no simplex named " + name + " in dimension " + std::to_string(dim));
}

const SimplexRef& FiniteSimplicialSet::stored_face(int dim, size_t index, int i) const {
  if (dim < 1 || index >= count(dim)) throw InvalidInput("simplex index out of range");
  if (i < 0 || i > dim) throw InvalidInput("face index out of range");
  return faces_[dim][index][i];
}

SimplexRef FiniteSimplicialSet::face(const SimplexRef& x, int i) const {
  int n = x.total_dim();
  if (n < 1) throw InvalidInput("a vertex has no faces");
  if (i < 0 || i > n) throw InvalidInput("face index out of range");
  if (!x.degenerate()) return stored_face(x.dim, x.index, i);
  int j = x.degeneracies.front();
  SimplexRef rest{x.dim, x.index,
                  std::vector<int>(x.degeneracies.begin() + 1, x.degeneracies.end())};
  if (i == j || i == j + 1) return rest;
  SimplexRef r = face(rest, i < j ? i : i - 1);
  r.degeneracies = push_degeneracy(std::move(r.degeneracies), i < j ? j - 1 : j);
  return r;
}

size_t FiniteSimplicialSet::leading_vertex(int dim, size_t index) const {
  SimplexRef r{dim, index, {}};
  if (index >= count(dim)) throw InvalidInput("simplex index out of range");
  for (int m = dim; m >= 1; --m) r = face(r, m);
  return r.index;
}

SimplexRef FiniteSimplicialSet::leading_edge(int dim, size_t index) const {
  if (dim < 1) throw InvalidInput("leading edge needs dimension >= 1");
  SimplexRef r{dim, index, {}};
  if (index >= count(dim)) throw InvalidInput("simplex index out of range");
  for (int m = dim; m >= 2; --m) r = face(r, m);
  return r;
}

std::pair<size_t, size_t> FiniteSimplicialSet::edge_endpoints(const SimplexRef& edge) const {
  if (edge.total_dim() != 1) throw InvalidInput("edge_endpoints expects an edge");
  if (edge.degenerate()) return {edge.index, edge.index};
  return {face(edge, 1).index, face(edge, 0).index};
}

void FiniteSimplicialSet::check_ref(const SimplexRef& r, int expected_dim) const {
  if (r.dim < 0 || static_cast<size_t>(r.dim) >= names_.size() ||
      r.index >= names_[r.dim].size())
    throw InvalidInput("face target does not exist");
  int m = r.dim;
  for (auto it = r.degeneracies.rbegin(); it != r.degeneracies.rend(); ++it) {
    if (*it < 0 || *it > m) throw InvalidInput("degeneracy index out of range");
    ++m;
  }
  for (size_t k = 0; k + 1 < r.degeneracies.size(); ++k)
    if (r.degeneracies[k] <= r.degeneracies[k + 1])
      throw InvalidInput("degeneracy word must be strictly descending");
  if (r.total_dim() != expected_dim)
    throw InvalidInput("face target has the wrong dimension");
}

void FiniteSimplicialSet::validate() const {
  for (int d = 1; d <= dimension(); ++d)
    for (size_t k = 0; k < count(d); ++k) {
      for (int i = 0; i <= d; ++i) check_ref(faces_[d][k][i], d - 1);
      if (d < 2) continue;
      for (int j = 1; j <= d; ++j)
        for (int i = 0; i < j; ++i)
          if (!(face(stored_face(d, k, j), i) == face(stored_face(d, k, i), j - 1)))
            throw InvalidInput("simplicial identity fails on " + names_[d][k] +
                               " at (i,j) = (" + std::to_string(i) + "," +
                               std::to_string(j) + ")");
    }
}

FiniteSimplicialSet circle_model() {
  FiniteSimplicialSet k;
  k.add_simplex(0, "p");
  k.add_simplex(1, "gamma", {{0, 0, {}}, {0, 0, {}}});
  k.validate();
  return k;
}

FiniteSimplicialSet sphere_model() {
  FiniteSimplicialSet k;
  k.add_simplex(0, "p");
  SimplexRef degen_edge{0, 0, {0}};
  k.add_simplex(2, "sigma", {degen_edge, degen_edge, degen_edge});
  k.validate();
  return k;
}

FiniteSimplicialSet standard_simplex(int n, int max_dim) {
  if (n < 0) throw InvalidInput("dimension must be nonnegative");
  int top = max_dim < 0 ? n : std::min(max_dim, n);
  FiniteSimplicialSet k;
  std::map<std::vector<int>, size_t> index;
  // all strictly increasing vertex tuples, by dimension
  std::vector<std::vector<std::vector<int>>> tuples(top + 1);
  for (int d = 0; d <= top; ++d) {
    std::vector<int> t(d + 1);
    for (int i = 0; i <= d; ++i) t[i] = i;
    while (true) {
      tuples[d].push_back(t);
      int i = d;
      while (i >= 0 && t[i] == n - (d - i)) --i;
      if (i < 0) break;
      ++t[i];
      for (int j = i + 1; j <= d; ++j) t[j] = t[j - 1] + 1;
    }
  }
  for (int d = 0; d <= top; ++d)
    for (const auto& t : tuples[d]) {
      std::string nm;
      for (int v : t) nm += std::to_string(v);
      std::vector<SimplexRef> faces;
      for (int i = 0; i <= d && d > 0; ++i) {
        std::vector<int> f = t;
        f.erase(f.begin() + i);
        faces.push_back({d - 1, index.at(f), {}});
      }
      index[t] = k.add_simplex(d, nm, std::move(faces));
    }
  k.validate();
  return k;
}

}  // namespace atlas
