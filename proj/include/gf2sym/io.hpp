#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "gf2sym/bounds.hpp"
#include "gf2sym/canon.hpp"
#include "gf2sym/mc.hpp"

namespace gf2sym {

using Json = nlohmann::ordered_json;

/// Accepts "p/q", integers and plain decimals ("0.3" -> 3/10), exactly.
Rational parse_rational(std::string_view text);
/// "p/q", or "p" when the denominator is 1.
std::string rational_to_string(const Rational& q);

Json quintuple_to_json(const Quintuple& q);
/// Throws ParseError on malformed input; invariants are not checked here.
Quintuple quintuple_from_json(const Json& j);

Json gates_to_json(const GateList& gates);
GateList gates_from_json(const Json& j);

Json dist_table_to_json(const DistTable& d);
DistTable dist_table_from_json(const Json& j);

Json bound_to_json(const BoundResult& b);
Json rate_to_json(const RateResult& r);
Json mc_to_json(const McResult& r);

}  // namespace gf2sym
