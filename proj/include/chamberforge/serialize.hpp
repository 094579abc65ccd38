#pragma once

#include "chamberforge/chains.hpp"
#include "chamberforge/fans.hpp"
#include "chamberforge/rootdata.hpp"

#include "json.hpp"

#include <string>

namespace chamberforge {

using Json = nlohmann::json;

// Rationals are written as strings ("3/2"); integers as JSON numbers when
// they fit, strings otherwise.  Readers accept either form.
Json to_json(const Integer& z);
Json to_json(const Rational& q);
Json to_json(const IntVector& v);
Json to_json(const RatVector& v);

Integer integer_from_json(const Json& j);
Rational rational_from_json(const Json& j);
IntVector int_vector_from_json(const Json& j);
RatVector rat_vector_from_json(const Json& j);

/// {"rank", "rays", "cones" (0-based), "ordered": true}
Json fan_to_json(const StackyFan& fan);
/// Cones are closed under faces unless close_faces is false, in which case
/// they are kept exactly as listed (plus sorting) so validation can see gaps.
StackyFan fan_from_json(const Json& j, bool close_faces = true);

/// {"name", "rank", "simple_roots", "simple_coroots", "fundamental_weights",
///  "fundamental_coweights", "edges", "invariants"}
Json rootdata_to_json(const RootDatum& rd);
/// Missing weights/coweights are derived when the datum is semisimple;
/// edges and invariants are always recomputed.  Validates the result.
RootDatum rootdata_from_json(const Json& j);

SplittingType splitting_type_from_json(const Json& j);
Json splitting_type_to_json(const SplittingType& beta);

Json read_json_file(const std::string& path);

}  // namespace chamberforge
