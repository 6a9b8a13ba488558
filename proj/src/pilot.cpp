#include "teleop/pilot.hpp"

#include <algorithm>
#include <cmath>

#include "teleop/errors.hpp"

namespace teleop::pilot {

void PilotConfig::validate() const {
  if (!(input_rate > 0.0)) throw ContractViolation("pilot.input_rate must be > 0");
  if (!(alignment_tolerance > 0.0 && approach_slow_radius > 0.0 && depth_deadband > 0.0))
    throw ContractViolation("pilot tolerances must be > 0");
  if (!(approach_offset > 0.0 && lookahead > 0.0)) throw ContractViolation("pilot offsets must be > 0");
  if (!(lateral_tolerance > 0.0 && depth_tolerance > 0.0)) throw ContractViolation("pilot fractions must be > 0");
}

AimPoint aim_point(const vehicle::VehicleState& s, const mission::Gate& gate, const PilotConfig& cfg) {
  const mission::Vec3 p{s.x, s.y, s.z};
  const double along = gate.signed_distance(p);
  const double lat = gate.lateral(p);
  const double nx = gate.normal_x;
  const double ny = gate.normal_y;
  const double tx = -ny;
  const double ty = nx;
  auto on_axis = [&](double a, double l) {
    return AimPoint{gate.center.x + a * nx + l * tx, gate.center.y + a * ny + l * ty, false};
  };

  if (along <= 0.0) {
    // Pursue the axis while there is room to converge, or once aligned with the aperture.
    if (along <= -cfg.approach_offset || std::abs(lat) <= cfg.lateral_tolerance * gate.half_width()) {
      AimPoint a = on_axis(along + cfg.lookahead, 0.0);
      a.through = true;
      return a;
    }
    // Too close to the plane and off the axis: back out to the approach point.
    return on_axis(-cfg.approach_offset, 0.0);
  }

  // Past the plane without a pass: go around the aperture back to the approach side,
  // crossing the plane well outside the near-miss zone.
  const double side = lat >= 0.0 ? 1.0 : -1.0;
  const double clear = 2.5 * gate.half_width() + 0.5;
  if (std::abs(lat) < clear) return on_axis(std::max(along, cfg.approach_offset), side * (clear + 0.2));
  return on_axis(-2.0 * cfg.approach_offset, side * (clear + 0.2));
}

codec::Command decide(const vehicle::VehicleState& s, const mission::Gate& gate, const PilotConfig& cfg) {
  const AimPoint aim = aim_point(s, gate, cfg);
  const double bearing = std::atan2(aim.y - s.y, aim.x - s.x);

  codec::Command cmd;
  cmd.heading_idx = codec::nearest_heading_idx(rad_to_deg(bearing + cfg.compass_offset));
  const double commanded_true = deg_to_rad(codec::heading_of(cmd.heading_idx)) - cfg.compass_offset;
  const double heading_error = wrap_pi(commanded_true - s.psi);

  const double dz = gate.center.z - s.z;
  if (dz > cfg.depth_deadband)
    cmd.depth = codec::DepthStep::Lower;
  else if (dz < -cfg.depth_deadband)
    cmd.depth = codec::DepthStep::Raise;
  else
    cmd.depth = codec::DepthStep::Hold;

  const double dist = std::hypot(gate.center.x - s.x, gate.center.y - s.y);
  const bool aligned = std::abs(heading_error) < cfg.alignment_tolerance;
  const bool depth_ready = std::abs(dz) <= cfg.depth_tolerance * gate.half_height();
  const bool near = dist <= cfg.approach_slow_radius;

  if (!aligned || (near && !depth_ready))
    cmd.thrust = codec::Thrust::Stop;
  else if (near)
    cmd.thrust = codec::Thrust::SlowForward;
  else
    cmd.thrust = codec::Thrust::Forward;
  return cmd;
}

}  // namespace teleop::pilot
