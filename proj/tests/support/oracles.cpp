#include "oracles.hpp"

#include <numbers>
#include <variant>

namespace oracle {

int ordinal_by_counting(int heading, int thrust, int depth) {
  int n = 0;
  for (int h = 0; h < 16; ++h)
    for (int t = 0; t < 5; ++t)
      for (int d = 0; d < 3; ++d) {
        if (h == heading && t == thrust && d == depth) return n;
        ++n;
      }
  return -1;
}

namespace {

using teleop::mission::Gate;
using teleop::mission::Vec3;

// Positive on the side the normal points to.
double side(const Vec3& p, const Gate& g) { return (p.x - g.center.x) * g.normal_x + (p.y - g.center.y) * g.normal_y; }

Vec3 lerp(const Vec3& a, const Vec3& b, double f) {
  return {a.x + (b.x - a.x) * f, a.y + (b.y - a.y) * f, a.z + (b.z - a.z) * f};
}

// Hit point is on the plane, so its horizontal distance to the center is
// the in-plane offset.
bool inside(const Vec3& h, const Gate& g, double scale) {
  const double horiz = std::hypot(h.x - g.center.x, h.y - g.center.y);
  const double vert = std::abs(h.z - g.center.z);
  if (const auto* c = std::get_if<teleop::mission::Circle>(&g.shape)) {
    const double rr = c->radius * scale;
    return horiz * horiz + vert * vert <= rr * rr;
  }
  const auto& r = std::get<teleop::mission::Rectangle>(g.shape);
  return horiz <= 0.5 * r.width * scale && vert <= 0.5 * r.height * scale;
}

}  // namespace

Verdict crossing_by_subdivision(const Vec3& a, const Vec3& b, const Gate& g, double near_factor, int samples) {
  Vec3 prev = a;
  bool prev_front = side(a, g) > 0.0;
  for (int i = 1; i < samples; ++i) {
    const Vec3 cur = i == samples - 1 ? b : lerp(a, b, static_cast<double>(i) / (samples - 1));
    const bool cur_front = side(cur, g) > 0.0;
    if (cur_front != prev_front) {
      const double s0 = side(prev, g);
      const double s1 = side(cur, g);
      const Vec3 hit = lerp(prev, cur, s0 / (s0 - s1));
      if (inside(hit, g, 1.0)) return cur_front ? Verdict::Pass : Verdict::WrongSide;
      if (inside(hit, g, near_factor)) return Verdict::MissNear;
      return Verdict::None;
    }
    prev = cur;
    prev_front = cur_front;
  }
  return Verdict::None;
}

Moments truncated_normal(double mu, double sigma, double lo) {
  if (sigma == 0.0) return {std::max(mu, lo), 0.0};
  const double alpha = (lo - mu) / sigma;
  const double phi = std::exp(-0.5 * alpha * alpha) / std::sqrt(2.0 * std::numbers::pi);
  const double tail = 0.5 * std::erfc(alpha / std::numbers::sqrt2);  // 1 - Phi(alpha)
  const double lambda = phi / tail;
  return {mu + sigma * lambda, sigma * sigma * (1.0 + alpha * lambda - lambda * lambda)};
}

}  // namespace oracle
