#include "atlas/json_io.hpp"

namespace atlas {

namespace {

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw MalformedInput("expected an object", path);
  auto it = j.find(key);
  if (it == j.end()) throw MalformedInput("missing field '" + key + "'", path);
  return *it;
}

std::string get_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw MalformedInput("expected a string", path);
  return j.get<std::string>();
}

long get_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw MalformedInput("expected an integer", path);
  return j.get<long>();
}

void require_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw MalformedInput("expected an array", path);
}

std::string at(const std::string& path, size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

size_t gen_index(const GeneratorSetPtr& gens, const Json& j, const std::string& path) {
  std::string name = get_string(j, path);
  if (!gens->has(name)) throw MalformedInput("unknown generator '" + name + "'", path);
  return gens->index(name);
}

size_t basis_index(const GradedBasis& basis, const Json& j, const std::string& path) {
  std::string name = get_string(j, path);
  for (size_t i = 0; i < basis.size(); ++i)
    if (basis.names[i] == name) return i;
  throw MalformedInput("unknown basis element '" + name + "'", path);
}

GradedBasis graded_basis_from_json(const Json& j, const std::string& path) {
  GradedBasis basis;
  const Json& names = field(j, "names", path);
  require_array(names, path + ".names");
  for (size_t i = 0; i < names.size(); ++i)
    basis.names.push_back(get_string(names[i], at(path + ".names", i)));
  const Json& degrees = field(j, "degrees", path);
  require_array(degrees, path + ".degrees");
  for (size_t i = 0; i < degrees.size(); ++i)
    basis.degrees.push_back(int(get_int(degrees[i], at(path + ".degrees", i))));
  if (basis.names.size() != basis.degrees.size())
    throw MalformedInput("names and degrees differ in length", path);
  return basis;
}

}  // namespace

Json report_header(const std::string& kind) {
  return Json{{"schema_version", 1}, {"kind", kind}};
}

Scalar scalar_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Scalar(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_scalar(j.get<std::string>());
    } catch (const InvalidInput& e) {
      throw MalformedInput(e.what(), path);
    }
  }
  throw MalformedInput("expected a rational \"p/q\" string or integer", path);
}

Json scalar_to_json(const Scalar& s) { return format_scalar(s); }

Json matrix_to_json(const MatQ& m) {
  Json rows = Json::array();
  for (size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m.at(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

MatQ matrix_from_json(const Json& j, const std::string& path) {
  require_array(j, path);
  size_t rows = j.size();
  size_t cols = 0;
  if (rows > 0) {
    require_array(j[0], at(path, 0));
    cols = j[0].size();
  }
  MatQ m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    require_array(j[r], at(path, r));
    if (j[r].size() != cols) throw MalformedInput("ragged matrix rows", at(path, r));
    for (size_t c = 0; c < cols; ++c)
      m.at(r, c) = scalar_from_json(j[r][c], at(at(path, r), c));
  }
  return m;
}

GeneratorSetPtr generators_from_json(const Json& j, const std::string& path) {
  require_array(j, path);
  std::vector<Generator> gens;
  for (size_t i = 0; i < j.size(); ++i) {
    const std::string p = at(path, i);
    gens.push_back({get_string(field(j[i], "name", p), p + ".name"),
                    int(get_int(field(j[i], "degree", p), p + ".degree"))});
  }
  try {
    return make_generators(std::move(gens));
  } catch (const InvalidInput& e) {
    throw MalformedInput(e.what(), path);
  }
}

Json generators_to_json(const GeneratorSetPtr& gens) {
  Json out = Json::array();
  for (size_t i = 0; i < gens->size(); ++i)
    out.push_back(Json{{"name", gens->name(i)}, {"degree", gens->degree(i)}});
  return out;
}

TensorElement tensor_from_json(const Json& j, const GeneratorSetPtr& gens,
                               const std::string& path) {
  require_array(j, path);
  TensorElement a(gens);
  for (size_t i = 0; i < j.size(); ++i) {
    const std::string p = at(path, i);
    const Json& word = field(j[i], "word", p);
    require_array(word, p + ".word");
    Word w;
    for (size_t l = 0; l < word.size(); ++l)
      w.push_back(uint32_t(gen_index(gens, word[l], at(p + ".word", l))));
    a.add_term(w, scalar_from_json(field(j[i], "coeff", p), p + ".coeff"));
  }
  return a;
}

Json tensor_to_json(const TensorElement& a) {
  Json out = Json::array();
  for (const auto& [w, c] : a.terms()) {
    Json word = Json::array();
    for (uint32_t g : w) word.push_back(a.generators()->name(g));
    out.push_back(Json{{"word", std::move(word)}, {"coeff", scalar_to_json(c)}});
  }
  return out;
}

Derivation derivation_from_json(const Json& j, const WeightTruncation& trunc) {
  GeneratorSetPtr gens = generators_from_json(field(j, "generators", "$"), "$.generators");
  int degree = int(get_int(field(j, "degree", "$"), "$.degree"));
  Derivation d(gens, degree, trunc);
  const Json& images = field(j, "images", "$");
  if (!images.is_object()) throw MalformedInput("expected an object", "$.images");
  for (const auto& [name, value] : images.items()) {
    const std::string p = "$.images." + name;
    if (!gens->has(name)) throw MalformedInput("unknown generator '" + name + "'", p);
    try {
      d.set_image(gens->index(name), tensor_from_json(value, gens, p));
    } catch (const InvalidInput& e) {
      throw MalformedInput(e.what(), p);
    }
  }
  return d;
}

Json derivation_to_json(const Derivation& d) {
  Json images = Json::object();
  for (size_t g = 0; g < d.generators()->size(); ++g)
    if (!d.image(g).is_zero())
      images[d.generators()->name(g)] = tensor_to_json(d.image(g));
  return Json{{"generators", generators_to_json(d.generators())},
              {"degree", d.degree()},
              {"images", std::move(images)}};
}

CInftyStructure cinfty_from_json(const Json& j) {
  GradedBasis basis = graded_basis_from_json(field(j, "basis", "$"), "$.basis");
  try {
    basis.validate();
  } catch (const InvalidInput& e) {
    throw MalformedInput(e.what(), "$.basis");
  }
  bool minimal = true;
  if (j.contains("minimal")) {
    if (!j["minimal"].is_boolean()) throw MalformedInput("expected a boolean", "$.minimal");
    minimal = j["minimal"].get<bool>();
  }
  CInftyStructure m(basis, minimal);
  const Json& products = field(j, "products", "$");
  require_array(products, "$.products");
  for (size_t i = 0; i < products.size(); ++i) {
    const std::string p = at("$.products", i);
    const Json& in = field(products[i], "in", p);
    require_array(in, p + ".in");
    std::vector<size_t> idx;
    for (size_t l = 0; l < in.size(); ++l)
      idx.push_back(basis_index(basis, in[l], at(p + ".in", l)));
    size_t out = basis_index(basis, field(products[i], "out", p), p + ".out");
    Scalar coeff = scalar_from_json(field(products[i], "coeff", p), p + ".coeff");
    try {
      m.add_term(idx, out, coeff);
    } catch (const InvalidInput& e) {
      throw MalformedInput(e.what(), p);
    }
  }
  return m;
}

Json cinfty_to_json(const CInftyStructure& m) {
  Json basis{{"names", m.basis().names}, {"degrees", m.basis().degrees}};
  Json products = Json::array();
  for (const auto& [in, out] : m.terms()) {
    Json in_names = Json::array();
    for (size_t i : in) in_names.push_back(m.basis().names[i]);
    for (size_t o = 0; o < out.size(); ++o)
      if (out[o] != Scalar(0))
        products.push_back(Json{{"in", in_names},
                                {"out", m.basis().names[o]},
                                {"coeff", scalar_to_json(out[o])}});
  }
  return Json{{"basis", std::move(basis)},
              {"minimal", m.minimal()},
              {"products", std::move(products)}};
}

DGAModel dga_from_json(const Json& j) {
  DGAModel a;
  a.basis = graded_basis_from_json(field(j, "basis", "$"), "$.basis");
  try {
    a.basis.validate();
  } catch (const InvalidInput& e) {
    throw MalformedInput(e.what(), "$.basis");
  }
  size_t n = a.basis.size();
  a.d = MatQ(n, n);
  const Json& d = field(j, "d", "$");
  require_array(d, "$.d");
  for (size_t i = 0; i < d.size(); ++i) {
    const std::string p = at("$.d", i);
    size_t from = basis_index(a.basis, field(d[i], "from", p), p + ".from");
    size_t to = basis_index(a.basis, field(d[i], "to", p), p + ".to");
    a.d.at(to, from) = scalar_from_json(field(d[i], "coeff", p), p + ".coeff");
  }
  const Json& products = field(j, "products", "$");
  require_array(products, "$.products");
  for (size_t i = 0; i < products.size(); ++i) {
    const std::string p = at("$.products", i);
    size_t l = basis_index(a.basis, field(products[i], "left", p), p + ".left");
    size_t r = basis_index(a.basis, field(products[i], "right", p), p + ".right");
    const Json& value = field(products[i], "value", p);
    require_array(value, p + ".value");
    Vec v(n, Scalar(0));
    for (size_t t = 0; t < value.size(); ++t) {
      const std::string pt = at(p + ".value", t);
      size_t o = basis_index(a.basis, field(value[t], "name", pt), pt + ".name");
      v[o] += scalar_from_json(field(value[t], "coeff", pt), pt + ".coeff");
    }
    a.products[{l, r}] = std::move(v);
  }
  return a;
}

FiniteSimplicialSet simplicial_from_json(const Json& j) {
  FiniteSimplicialSet k;
  const Json& simplices = field(j, "simplices", "$");
  require_array(simplices, "$.simplices");
  for (size_t i = 0; i < simplices.size(); ++i) {
    const std::string p = at("$.simplices", i);
    int dim = int(get_int(field(simplices[i], "dim", p), p + ".dim"));
    std::string name = get_string(field(simplices[i], "name", p), p + ".name");
    std::vector<SimplexRef> faces;
    if (dim > 0) {
      const Json& fj = field(simplices[i], "faces", p);
      require_array(fj, p + ".faces");
      for (size_t f = 0; f < fj.size(); ++f) {
        const std::string pf = at(p + ".faces", f);
        SimplexRef ref;
        ref.dim = int(get_int(field(fj[f], "dim", pf), pf + ".dim"));
        std::string fname = get_string(field(fj[f], "name", pf), pf + ".name");
        if (fj[f].contains("degeneracies")) {
          require_array(fj[f]["degeneracies"], pf + ".degeneracies");
          for (size_t l = 0; l < fj[f]["degeneracies"].size(); ++l)
            ref.degeneracies.push_back(
                int(get_int(fj[f]["degeneracies"][l], at(pf + ".degeneracies", l))));
        }
        try {
          ref.index = k.index_of(ref.dim, fname);
        } catch (const InvalidInput& e) {
          throw MalformedInput(e.what(), pf);
        }
        faces.push_back(std::move(ref));
      }
    }
    try {
      k.add_simplex(dim, std::move(name), std::move(faces));
    } catch (const InvalidInput& e) {
      throw MalformedInput(e.what(), p);
    }
  }
  return k;
}

LocalSystem local_system_from_json(const Json& j, const FiniteSimplicialSet& k) {
  LocalSystem m;
  const Json& dims = field(j, "fiber_dims", "$");
  require_array(dims, "$.fiber_dims");
  if (dims.size() != k.count(0))
    throw MalformedInput("fiber_dims must list one entry per vertex", "$.fiber_dims");
  for (size_t i = 0; i < dims.size(); ++i)
    m.fiber_dim.push_back(size_t(get_int(dims[i], at("$.fiber_dims", i))));
  const Json& edges = field(j, "edge_maps", "$");
  require_array(edges, "$.edge_maps");
  if (edges.size() != k.count(1))
    throw MalformedInput("edge_maps must list one matrix per nondegenerate edge",
                         "$.edge_maps");
  for (size_t i = 0; i < edges.size(); ++i)
    m.edge_map.push_back(matrix_from_json(edges[i], at("$.edge_maps", i)));
  if (j.contains("trivializations")) {
    require_array(j["trivializations"], "$.trivializations");
    for (size_t i = 0; i < j["trivializations"].size(); ++i)
      m.trivialization.push_back(
          matrix_from_json(j["trivializations"][i], at("$.trivializations", i)));
  }
  if (j.contains("holonomy")) {
    require_array(j["holonomy"], "$.holonomy");
    for (size_t i = 0; i < j["holonomy"].size(); ++i)
      m.holonomy.push_back(matrix_from_json(j["holonomy"][i], at("$.holonomy", i)));
  }
  return m;
}

Cochain cochain_from_json(const Json& j, const FiniteSimplicialSet& k) {
  Cochain c;
  c.degree = int(get_int(field(j, "degree", "$"), "$.degree"));
  const Json& values = field(j, "values", "$");
  require_array(values, "$.values");
  size_t expected = c.degree <= k.dimension() && c.degree >= 0 ? k.count(c.degree) : 0;
  if (values.size() != expected)
    throw MalformedInput("values must list one vector per nondegenerate simplex of the "
                         "cochain degree",
                         "$.values");
  for (size_t i = 0; i < values.size(); ++i) {
    const std::string p = at("$.values", i);
    require_array(values[i], p);
    Vec v;
    for (size_t l = 0; l < values[i].size(); ++l)
      v.push_back(scalar_from_json(values[i][l], at(p, l)));
    c.values.push_back(std::move(v));
  }
  return c;
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw MalformedInput(e.what(), "$");
  }
}

}  // namespace atlas
