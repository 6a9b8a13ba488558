#pragma once

#include <random>
#include <utility>

#include "teleop/gate.hpp"

namespace gen {

/// Segment endpoints scattered around a gate so that crossings inside,
/// near and far from the aperture, in both directions, all occur.
inline std::pair<teleop::mission::Vec3, teleop::mission::Vec3> segment_near(std::mt19937_64& rng,
                                                                            const teleop::mission::Gate& g) {
  const double ext = 3.0 * std::max(g.half_width(), g.half_height());
  std::uniform_real_distribution<double> along(-0.6, 0.6), lat(-ext, ext), vert(-ext, ext);
  const double tx = -g.normal_y, ty = g.normal_x;
  auto point = [&] {
    const double a = along(rng), l = lat(rng), v = vert(rng);
    return teleop::mission::Vec3{g.center.x + a * g.normal_x + l * tx, g.center.y + a * g.normal_y + l * ty,
                                 g.center.z + v};
  };
  auto p = point();
  auto q = point();
  return {p, q};
}

}  // namespace gen
