#pragma once

// JSON descriptors for convex bodies:
//
//   {"variant": "orthant", "d": 3}
//   {"variant": "halfspace", "normal": [0, 1], "offset": 0}
//   {"variant": "halfspace", "d": 4}                       (canonical: normal e_d, offset 0)
//   {"variant": "ball", "center": [0, 0], "radius": 1}
//   {"variant": "ball", "d": 10, "radius": 1}              (center at the origin)
//   {"variant": "inflated", "base": {...}, "R": 1}
//   {"variant": "intersection", "bodies": [{...}, ...], "witness": [...]}

#include <json.hpp>

#include "seprate/geometry.hpp"

namespace seprate {

ConvexBody body_from_json(const nlohmann::json& j);
nlohmann::json body_to_json(const ConvexBody& body);

nlohmann::json point_to_json(const Point& p);
Point point_from_json(const nlohmann::json& j);

}  // namespace seprate
