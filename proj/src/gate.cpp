#include "teleop/gate.hpp"

#include <cmath>

namespace teleop::mission {

double Gate::signed_distance(const Vec3& p) const {
  return normal_x * (p.x - center.x) + normal_y * (p.y - center.y);
}

double Gate::lateral(const Vec3& p) const { return -normal_y * (p.x - center.x) + normal_x * (p.y - center.y); }

double Gate::half_width() const {
  if (const auto* c = std::get_if<Circle>(&shape)) return c->radius;
  return std::get<Rectangle>(shape).width / 2.0;
}

double Gate::half_height() const {
  if (const auto* c = std::get_if<Circle>(&shape)) return c->radius;
  return std::get<Rectangle>(shape).height / 2.0;
}

bool Gate::contains(double lat, double vert, double scale) const {
  if (const auto* c = std::get_if<Circle>(&shape)) {
    const double r = c->radius * scale;
    return lat * lat + vert * vert <= r * r;
  }
  const auto& rect = std::get<Rectangle>(shape);
  return std::abs(lat) <= rect.width / 2.0 * scale && std::abs(vert) <= rect.height / 2.0 * scale;
}

std::string to_string(Crossing c) {
  switch (c) {
    case Crossing::None: return "none";
    case Crossing::Pass: return "pass";
    case Crossing::WrongSide: return "wrong_side";
    case Crossing::MissNear: return "miss_near";
  }
  return "none";
}

Crossing detect_crossing(const Vec3& prev, const Vec3& next, const Gate& gate, double near_factor) {
  const double s0 = gate.signed_distance(prev);
  const double s1 = gate.signed_distance(next);
  const bool side0 = s0 > 0.0;
  const bool side1 = s1 > 0.0;
  if (side0 == side1) return Crossing::None;

  const double t = s0 / (s0 - s1);
  const Vec3 hit{prev.x + t * (next.x - prev.x), prev.y + t * (next.y - prev.y), prev.z + t * (next.z - prev.z)};
  const double lat = gate.lateral(hit);
  const double vert = hit.z - gate.center.z;

  if (gate.contains(lat, vert)) return side1 ? Crossing::Pass : Crossing::WrongSide;
  if (gate.contains(lat, vert, near_factor)) return Crossing::MissNear;
  return Crossing::None;
}

}  // namespace teleop::mission
