#include "closed_loop.hpp"

#include <algorithm>

#include "teleop/actuation.hpp"

namespace loop {

using namespace teleop;

Plant noiseless() {
  Plant p;
  p.env.sigma_depth = 0.0;
  p.env.sigma_heading = 0.0;
  p.env.sigma_yaw_rate = 0.0;
  return p;
}

std::vector<Sample> hold(const Plant& p, const vehicle::VehicleState& start, const autonomy::Setpoints& setpoints,
                         double duration) {
  autonomy::Onboard onboard(p.gains, p.alloc, p.env.pool_depth, -p.vehicle.buoyancy_residual, setpoints);
  vehicle::SensorModel sensors(p.env.rng_seed);
  const ThrustAllocationMatrix tam(p.alloc.lateral_offset);
  const SimTime end = start.t + from_seconds(duration);
  std::vector<Sample> out;
  vehicle::VehicleState s = start;
  while (s.t < end) {
    const auto reading = sensors.sense(s, p.anomaly, p.env);
    out.push_back({to_seconds(s.t), s, reading});
    auto tick = onboard.tick({}, reading, s.t, p.dt);
    const double m = p.vehicle.max_motor_thrust;
    MotorThrusts th = tick.thrusts;
    th.vertical = std::clamp(th.vertical, -m, m);
    th.left = std::clamp(th.left, -m, m);
    th.right = std::clamp(th.right, -m, m);
    s = vehicle::step(s, tam.forces(th), p.env, p.vehicle, p.dt);
  }
  return out;
}

}  // namespace loop
