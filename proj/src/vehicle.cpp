#include "teleop/vehicle.hpp"

#include <algorithm>
#include <cmath>

#include "teleop/angles.hpp"
#include "teleop/errors.hpp"

namespace teleop::vehicle {

void VehicleParams::validate() const {
  if (!(mass > 0.0)) throw ContractViolation("vehicle.mass must be > 0");
  if (!(yaw_inertia > 0.0)) throw ContractViolation("vehicle.yaw_inertia must be > 0");
  if (!(length > 0.0)) throw ContractViolation("vehicle.length must be > 0");
  for (double d : {drag_surge_linear, drag_heave_linear, drag_yaw_linear, drag_surge_quadratic, drag_heave_quadratic,
                   drag_yaw_quadratic})
    if (!(d >= 0.0)) throw ContractViolation("vehicle drag coefficients must be >= 0");
  if (!(max_motor_thrust > 0.0)) throw ContractViolation("vehicle.max_motor_thrust must be > 0");
}

void Environment::validate() const {
  if (!(pool_x > 0.0 && pool_y > 0.0 && pool_depth > 0.0)) throw ContractViolation("pool dimensions must be > 0");
  if (!(sigma_depth >= 0.0 && sigma_heading >= 0.0 && sigma_yaw_rate >= 0.0))
    throw ContractViolation("sensor noise sigmas must be >= 0");
  if (!(water_density > 0.0)) throw ContractViolation("water_density must be > 0");
}

namespace {

// v' = (v + dt*F/m) / (1 + dt*(d1 + d2|v|)/m)
double damped_update(double v, double force, double inertia, double d1, double d2, double dt) {
  return (v + dt * force / inertia) / (1.0 + dt * (d1 + d2 * std::abs(v)) / inertia);
}

bool finite(const VehicleState& s) {
  return std::isfinite(s.x) && std::isfinite(s.y) && std::isfinite(s.z) && std::isfinite(s.psi) &&
         std::isfinite(s.u) && std::isfinite(s.w) && std::isfinite(s.r);
}

}  // namespace

VehicleState step(const VehicleState& s, const BodyForces& f, const Environment& env, const VehicleParams& p,
                  SimTime dt_time) {
  const double dt = to_seconds(dt_time);
  VehicleState n = s;
  n.t = s.t + dt_time;

  n.u = damped_update(s.u, f.surge, p.mass, p.drag_surge_linear, p.drag_surge_quadratic, dt);
  n.w = damped_update(s.w, f.heave + p.buoyancy_residual, p.mass, p.drag_heave_linear, p.drag_heave_quadratic, dt);
  n.r = damped_update(s.r, f.yaw, p.yaw_inertia, p.drag_yaw_linear, p.drag_yaw_quadratic, dt);

  n.psi = wrap_2pi(s.psi + dt * n.r);
  const double c = std::cos(n.psi);
  const double sn = std::sin(n.psi);
  n.x = s.x + dt * (n.u * c + env.current_x);
  n.y = s.y + dt * (n.u * sn + env.current_y);
  n.z = s.z + dt * n.w;

  if (!finite(n)) throw NumericalDivergence("vehicle state became non-finite at t=" + format_seconds(n.t));

  // Wall contact: clamp, and drop the surge that keeps pushing into the wall.
  auto clamp_axis = [&](double& pos, double hi, double heading_component) {
    if (pos < 0.0 || pos > hi) {
      const bool into_wall = (pos < 0.0 && n.u * heading_component < 0.0) || (pos > hi && n.u * heading_component > 0.0);
      pos = std::clamp(pos, 0.0, hi);
      if (into_wall) n.u = 0.0;
    }
  };
  clamp_axis(n.x, env.pool_x, c);
  clamp_axis(n.y, env.pool_y, sn);
  if (n.z < 0.0 || n.z > env.pool_depth) {
    if ((n.z < 0.0 && n.w < 0.0) || (n.z > env.pool_depth && n.w > 0.0)) n.w = 0.0;
    n.z = std::clamp(n.z, 0.0, env.pool_depth);
  }
  return n;
}

double kinetic_energy(const VehicleState& s, const VehicleParams& p) {
  return 0.5 * (p.mass * s.u * s.u + p.mass * s.w * s.w + p.yaw_inertia * s.r * s.r);
}

SensorReading SensorModel::sense(const VehicleState& s, const MagneticAnomaly& anomaly, const Environment& env) {
  // Always draw three samples so the stream position depends only on call count.
  const double nz = unit_(rng_);
  const double npsi = unit_(rng_);
  const double nr = unit_(rng_);
  SensorReading out;
  // Near the surface the reading may go slightly negative, never below -3 sigma.
  out.depth = std::max(s.z + env.sigma_depth * nz, -3.0 * env.sigma_depth);
  out.heading = wrap_2pi(s.psi + anomaly.bias_at(s.x, s.y) + env.sigma_heading * npsi);
  out.yaw_rate = s.r + env.sigma_yaw_rate * nr;
  return out;
}

}  // namespace teleop::vehicle
