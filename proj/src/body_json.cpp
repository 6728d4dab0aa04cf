#include "seprate/body_json.hpp"

#include <string>

namespace seprate {

namespace {

const nlohmann::json& field(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw DomainError(std::string("body JSON: missing field '") + key + "'");
  return *it;
}

int dimension_field(const nlohmann::json& j) {
  const nlohmann::json& d = field(j, "d");
  if (!d.is_number_integer() || d.get<long>() < 1) throw DomainError("body JSON: 'd' must be a positive integer");
  return d.get<int>();
}

double number_field(const nlohmann::json& j, const char* key) {
  const nlohmann::json& x = field(j, key);
  if (!x.is_number()) throw DomainError(std::string("body JSON: '") + key + "' must be a number");
  return x.get<double>();
}

}  // namespace

nlohmann::json point_to_json(const Point& p) {
  nlohmann::json out = nlohmann::json::array();
  for (int i = 0; i < p.size(); ++i) out.push_back(p(i));
  return out;
}

Point point_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw DomainError("expected a non-empty array of numbers");
  Point p(static_cast<int>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw DomainError("expected a non-empty array of numbers");
    p(static_cast<int>(i)) = j[i].get<double>();
  }
  require_valid_point(p);
  return p;
}

ConvexBody body_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DomainError("body JSON must be an object");
  const nlohmann::json& variant = field(j, "variant");
  if (!variant.is_string()) throw DomainError("body JSON: 'variant' must be a string");
  const std::string kind = variant.get<std::string>();

  if (kind == "orthant") return ConvexBody::orthant(dimension_field(j));
  if (kind == "halfspace") {
    if (!j.contains("normal")) return ConvexBody::canonical_half_space(dimension_field(j));
    const double offset = j.contains("offset") ? number_field(j, "offset") : 0.0;
    return ConvexBody::half_space(point_from_json(j["normal"]), offset);
  }
  if (kind == "ball") {
    const double radius = number_field(j, "radius");
    if (j.contains("center")) return ConvexBody::ball(point_from_json(j["center"]), radius);
    return ConvexBody::ball(Point::Zero(dimension_field(j)), radius);
  }
  if (kind == "inflated") return ConvexBody::inflated(body_from_json(field(j, "base")), number_field(j, "R"));
  if (kind == "intersection") {
    const nlohmann::json& parts = field(j, "bodies");
    if (!parts.is_array()) throw DomainError("body JSON: 'bodies' must be an array");
    std::vector<ConvexBody> bodies;
    for (const auto& part : parts) bodies.push_back(body_from_json(part));
    return ConvexBody::intersection(std::move(bodies), point_from_json(field(j, "witness")));
  }
  throw DomainError("body JSON: unknown variant '" + kind + "'");
}

nlohmann::json body_to_json(const ConvexBody& body) {
  nlohmann::json out;
  out["variant"] = body.kind();
  if (const auto* hs = body.as<HalfSpace>()) {
    out["normal"] = point_to_json(hs->normal);
    out["offset"] = hs->offset;
  } else if (const auto* o = body.as<Orthant>()) {
    out["d"] = o->d;
  } else if (const auto* b = body.as<Ball>()) {
    out["center"] = point_to_json(b->center);
    out["radius"] = b->radius;
  } else if (const auto* inf = body.as<Inflated>()) {
    out["base"] = body_to_json(*inf->base);
    out["R"] = inf->R;
  } else if (const auto* in = body.as<Intersection>()) {
    out["bodies"] = nlohmann::json::array();
    for (const ConvexBody& part : *in->parts) out["bodies"].push_back(body_to_json(part));
    out["witness"] = point_to_json(in->witness);
  }
  return out;
}

}  // namespace seprate
