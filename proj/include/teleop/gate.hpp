#pragma once

#include <string>
#include <variant>

namespace teleop::mission {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Vec3&, const Vec3&) = default;
};

struct Circle {
  double radius = 0.0;
  friend bool operator==(const Circle&, const Circle&) = default;
};

struct Rectangle {
  double width = 0.0;   ///< horizontal, along the gate plane
  double height = 0.0;  ///< vertical
  friend bool operator==(const Rectangle&, const Rectangle&) = default;
};

using Aperture = std::variant<Circle, Rectangle>;

/// A vertical aperture that must be crossed in the +normal direction.
struct Gate {
  int id = 0;
  int order = 0;   ///< 1..N traversal index
  Vec3 center;     ///< m, z positive down
  double normal_x = 1.0;  ///< unit horizontal normal
  double normal_y = 0.0;
  Aperture shape = Circle{0.5};

  /// Signed horizontal distance from the gate plane, negative on the approach side.
  double signed_distance(const Vec3& p) const;
  /// Horizontal offset along the plane; the in-plane axis is the normal rotated +90 deg.
  double lateral(const Vec3& p) const;
  /// True if the in-plane offsets fall inside the aperture grown by `scale`.
  bool contains(double lateral, double vertical, double scale = 1.0) const;
  double half_width() const;
  double half_height() const;

  friend bool operator==(const Gate&, const Gate&) = default;
};

enum class Crossing { None, Pass, WrongSide, MissNear };

std::string to_string(Crossing c);

/// Classifies the motion prev -> next against a gate. A crossing needs a
/// strict change of side (points exactly on the plane count as the approach
/// side), so motion within the plane is never a crossing. MissNear is a
/// crossing of the plane outside the aperture but within `near_factor`
/// times its extent, in either direction.
Crossing detect_crossing(const Vec3& prev, const Vec3& next, const Gate& gate, double near_factor = 2.0);

}  // namespace teleop::mission
