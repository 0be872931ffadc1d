#pragma once

#include "zpl/oracle.hpp"

#include <json.hpp>

#include <string>

namespace zpl {

using Json = nlohmann::ordered_json;

// Scalars are "num/den" strings (den omitted when 1); integers are accepted on input.
Json to_json(const Q& x);
Q scalar_from_json(const Json& j);

// Matrices are arrays of columns.
Json to_json(const Mat& m);
Mat matrix_from_json(const Json& j);

Json to_json(const Submodule& M);

// {"p", "rank", "brackets": {"i,j": [[k, "scalar"], ...]}}, 0-based, i < j only.
Json to_json(const LieLattice& L);
LieLattice lattice_from_json(const Json& j);

Json to_json(const FamilyTag& t);
FamilyTag tag_from_json(const PContext& ctx, const Json& j);

Json to_json(const GoodBasis& gb);
Json to_json(const VirtualEndo& e);
VirtualEndo endo_from_json(const LieLattice& L, const Json& j);

Json to_json(const SimplicityVerdict& v);
Json to_json(const SubmoduleShape& s);
Json to_json(const ExhaustReport& r);

// Explicit lattice or family shorthand ({"family": "L5", "p": 5, "s": 1, ...}).
LieLattice lattice_from_any(const Json& j);
// Parse errors carry line and column; validation errors keep their Err code.
Json parse_json_text(const std::string& text);
Json read_json_file(const std::string& path);
LieLattice parse_lattice_file(const std::string& path);

}  // namespace zpl
