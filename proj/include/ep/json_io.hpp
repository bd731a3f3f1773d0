#pragma once
#include <string>

#include "json.hpp"

#include "ep/algebra.hpp"
#include "ep/blockmap.hpp"
#include "ep/katsura.hpp"
#include "ep/tuple.hpp"
#include "ep/units.hpp"

namespace ep {

using Json = nlohmann::json;

// Parse failure or unreadable file -> schema_error.
Json load_json_file(const std::string& path);

// Object shape guard: every required key present, nothing outside
// required + optional. Throws schema_error mentioning `where`.
void require_keys(const Json& j, const std::vector<std::string>& required,
                  const std::vector<std::string>& optional,
                  const std::string& where);

// {"vertices":[...], "edges":[{"id","src","rng"}]}
Graph parse_graph_json(const Json& j);

// Graph schema plus "group", "action", "phi", "c" keyed by generator name
// ("t" for Z and cyclic groups, every element name for table groups).
EPTuple parse_tuple_json(const Json& j, FieldSpec f);

// {"A":[[...]],"B":[[...]],"C":[["..."]]}, optional "vertices" and
// "row_vertices" (defaults: v0..v_{n-1}, the first r of them); C defaults to
// all ones.
KatsuraTriple parse_katsura_json(const Json& j, FieldSpec f);

// Array of terms {"alpha":[edge ids],"beta":[edge ids],"g":"t^k",
// "coeff":"-2/3","v":"v0"}; g and coeff default to "1". "v" is the source
// vertex of alpha, required only when it cannot be derived (both paths
// empty).
AlgElem parse_element_json(const Json& j, const EPTuple& t);

// {"v0":"e1", ...}: chosen out-edge per regular vertex.
std::vector<int> parse_section_json(const Json& j, const Graph& g);

ZMat parse_zmat_json(const Json& j, const std::string& name);

// Matrix of field-element strings converted to unit exponent vectors.
ExpMat parse_unit_matrix_json(const Json& j, const UnitsModel& u,
                              const std::string& name);

Json element_to_json(const EPTuple& t, const AlgElem& x);
Json zmat_to_json(const ZMat& m);
// Full tuple schema; parse_tuple_json(tuple_to_json(t), t.field()) rebuilds t.
Json tuple_to_json(const EPTuple& t);

}  // namespace ep
