#pragma once

// JSON serialization with a stable field order.  Polytopes and fans are
// embedded in their text formats next to structured fields.

#include "json.hpp"

#include "toriscope/fan.hpp"
#include "toriscope/polytope.hpp"
#include "toriscope/transforms.hpp"

namespace toriscope {

using Json = nlohmann::ordered_json;

/// Machine integers as JSON numbers, larger values as decimal strings.
Json to_json(const Integer& value);
/// "p/q" or "p".
Json to_json(const Rational& value);
Json to_json(const LatVec& v);
Json to_json(const std::vector<LatVec>& vs);
Json to_json(const std::vector<Integer>& values);
Json to_json(const LatticePolytope& p);
Json to_json(const Fan& fan);
Json to_json(const SupportResult& result);
Json face_json(const LatticePolytope& p, const Face& face);
Json to_json(const LatticePolytope& start, const ChiselReduction& reduction);
Json to_json(const ShrinkResult& result);
Json to_json(const PredicateResult& result);

/// Compact single-line dump terminated by a newline.
std::string dump_line(const Json& j);

}  // namespace toriscope
