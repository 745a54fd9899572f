#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "atlas/cinfty.hpp"
#include "atlas/cochain.hpp"
#include "atlas/connection.hpp"

namespace atlas {

using Json = nlohmann::json;

/// Structurally invalid descriptor (wrong type / missing field); carries a
/// diagnostic path like "$.images.x[0].coeff". Distinct from InvalidInput,
/// which signals mathematically invalid but well-formed data.
struct MalformedInput : std::runtime_error {
  std::string path;
  MalformedInput(const std::string& msg, std::string p)
      : std::runtime_error(msg + " at " + p), path(std::move(p)) {}
};

/// Header fields shared by every report object.
Json report_header(const std::string& kind);

// Scalars serialize as "p/q" strings; plain JSON integers are accepted.
Scalar scalar_from_json(const Json& j, const std::string& path);
Json scalar_to_json(const Scalar& s);

Json matrix_to_json(const MatQ& m);
MatQ matrix_from_json(const Json& j, const std::string& path);

// [{"name": "x", "degree": 1}, ...]
GeneratorSetPtr generators_from_json(const Json& j, const std::string& path);
Json generators_to_json(const GeneratorSetPtr& gens);

// [{"word": ["x", "y"], "coeff": "1/2"}, ...]
TensorElement tensor_from_json(const Json& j, const GeneratorSetPtr& gens,
                               const std::string& path);
Json tensor_to_json(const TensorElement& a);

// {"generators": [...], "degree": d, "images": {"x": [terms], ...}}
Derivation derivation_from_json(const Json& j, const WeightTruncation& trunc);
Json derivation_to_json(const Derivation& d);

// {"basis": {"names": [...], "degrees": [...]}, "minimal": true,
//  "products": [{"in": ["a","b"], "out": "c", "coeff": "1"}, ...]}
CInftyStructure cinfty_from_json(const Json& j);
Json cinfty_to_json(const CInftyStructure& m);

// {"basis": {...}, "d": [{"from": "a", "to": "b", "coeff": "1"}, ...],
//  "products": [{"left": "a", "right": "b",
//                "value": [{"name": "c", "coeff": "1"}]}, ...]}
DGAModel dga_from_json(const Json& j);

// {"simplices": [{"dim": 0, "name": "p"},
//                {"dim": 1, "name": "e", "faces": [ref, ref]}, ...]}
// ref = {"dim": 0, "name": "p", "degeneracies": [..]} (degeneracies optional)
FiniteSimplicialSet simplicial_from_json(const Json& j);

// {"fiber_dims": [..per vertex..], "edge_maps": [matrix per nondeg edge],
//  "trivializations": [matrix per vertex]?, "holonomy": [matrix]?}
LocalSystem local_system_from_json(const Json& j, const FiniteSimplicialSet& k);

// {"degree": n, "values": [[scalars] per nondegenerate n-simplex]}
Cochain cochain_from_json(const Json& j, const FiniteSimplicialSet& k);

/// Parses text, mapping nlohmann parse errors to MalformedInput.
Json parse_json_text(const std::string& text);

}  // namespace atlas
