#pragma once

#include <cmath>
#include <numbers>

namespace teleop {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Wraps to [0, 2pi).
inline double wrap_2pi(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  // fmod of a value just below a multiple of 2pi can round up to 2pi after the add.
  if (w >= kTwoPi) w -= kTwoPi;
  return w;
}

/// Wraps to (-pi, pi]. Used for all heading differences.
inline double wrap_pi(double a) {
  double w = wrap_2pi(a);
  if (w > std::numbers::pi) w -= kTwoPi;
  return w;
}

}  // namespace teleop
