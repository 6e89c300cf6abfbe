// File formats and report encodings. Output is canonical JSON: keys sorted,
// two-space indentation, floats with 17 significant digits, LF line ends.
#pragma once

#include <json.hpp>
#include <string>

#include "deligne/analytic.hpp"
#include "deligne/transgression.hpp"

namespace deligne {

using Json = nlohmann::json;

std::string canonical_dump(const Json& j);
Json parse_json(const std::string& text, const std::string& where);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Complex: {"dim", "top_simplices", "flags"}; tops in stored orientation.
Json complex_to_json(const SimplicialComplex& K);
SimplicialComplex complex_from_json(const Json& j);

// Cover: {"num_sets", "admissible_top": {"<top index>": [...]}} plus
// "admissible": {"k/i": [...]} when lower sets are not the union closure.
Json cover_to_json(const CoveredComplex& C);
CoveredComplex cover_from_json(const SimplicialComplex& K, const Json& j);

// Index map: {"k/i": alpha}.
Json index_map_to_json(const IndexMap& rho);
IndexMap index_map_from_json(const CoveredComplex& C, const Json& j);

// Cochain: {"degree", "entries": [{"k", "indices", "simplex": [k, i], "value"}]}.
// Exact cochains add "unit": "turns" and store values as "p/q" strings.
Json cochain_to_json(const Cochain& c);
Json cochain_to_json(const RationalCochain& c);
bool cochain_is_exact(const Json& j);
Cochain cochain_from_json(CoveredPtr base, const Json& j);
RationalCochain rational_cochain_from_json(CoveredPtr base, const Json& j);

Json scalar_json(double v);
Json scalar_json(const Rational& v);

Json report_json(const CocycleReport& r);
template <class S>
Json holonomy_json(const HolonomyValue<S>& h);
template <class S>
Json transition_json(const TransitionValue<S>& t);
template <class S>
Json curvature_json(const CurvatureValue<S>& c);

}  // namespace deligne
