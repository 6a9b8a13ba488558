#pragma once

// Reduced-DOF dynamics of the vehicle: world position (x, y, z down), yaw,
// and body velocities surge u, heave w, yaw rate r. Sway is not modeled;
// lateral drift only comes from water current advection.

#include <cstdint>
#include <random>

#include "teleop/actuation.hpp"
#include "teleop/time.hpp"

namespace teleop::vehicle {

struct VehicleParams {
  double mass = 4.0;          ///< kg
  double length = 0.45;       ///< m
  double yaw_inertia = 0.02;  ///< kg*m^2
  // Linear drag: N*s/m (surge, heave), N*m*s/rad (yaw).
  double drag_surge_linear = 2.0;
  double drag_heave_linear = 2.0;
  double drag_yaw_linear = 0.05;
  // Quadratic drag: N*s^2/m^2, N*m*s^2/rad^2.
  double drag_surge_quadratic = 2.0;
  double drag_heave_quadratic = 6.0;
  double drag_yaw_quadratic = 0.05;
  double max_motor_thrust = 2.0;   ///< N, per motor
  double buoyancy_residual = 0.0;  ///< N, positive sinks

  void validate() const;
  friend bool operator==(const VehicleParams&, const VehicleParams&) = default;
};

struct VehicleState {
  double x = 0.0;    ///< m, pool frame (North)
  double y = 0.0;    ///< m, pool frame (East)
  double z = 0.0;    ///< m, depth, positive down
  double psi = 0.0;  ///< rad, [0, 2pi), 0 = +x, clockwise
  double u = 0.0;    ///< m/s surge
  double w = 0.0;    ///< m/s heave
  double r = 0.0;    ///< rad/s yaw rate
  SimTime t{};

  friend bool operator==(const VehicleState&, const VehicleState&) = default;
};

struct MagneticAnomaly {
  double constant_bias = 0.0;  ///< rad
  double gradient_x = 0.0;     ///< rad/m
  double gradient_y = 0.0;     ///< rad/m

  /// Heading offset the magnetometer sees at a pool position.
  double bias_at(double x, double y) const { return constant_bias + gradient_x * x + gradient_y * y; }
  friend bool operator==(const MagneticAnomaly&, const MagneticAnomaly&) = default;
};

struct Environment {
  double pool_x = 12.5;
  double pool_y = 8.0;
  double pool_depth = 2.1;
  double current_x = 0.0;  ///< m/s, world frame
  double current_y = 0.0;
  double water_density = 1000.0;
  double sigma_depth = 0.01;     ///< m
  double sigma_heading = 0.035;  ///< rad
  double sigma_yaw_rate = 0.01;  ///< rad/s
  std::uint64_t rng_seed = 1;

  void validate() const;
  friend bool operator==(const Environment&, const Environment&) = default;
};

struct SensorReading {
  double depth = 0.0;     ///< m
  double heading = 0.0;   ///< rad, sensor frame, [0, 2pi)
  double yaw_rate = 0.0;  ///< rad/s
};

/// One fixed-step update. Semi-implicit Euler: velocities first (drag is
/// treated implicitly, so a coasting vehicle always loses energy), then
/// positions from the new velocities. Walls and surface/bottom clamp the
/// position and zero the velocity pushing into them.
/// Throws NumericalDivergence on a non-finite result.
VehicleState step(const VehicleState& s, const BodyForces& f, const Environment& env, const VehicleParams& p,
                  SimTime dt);

/// Kinetic energy 1/2 (m u^2 + m w^2 + I r^2).
double kinetic_energy(const VehicleState& s, const VehicleParams& p);

/// Pressure depth, magnetometer heading and gyro rate with Gaussian noise.
/// Owns its random stream; readings depend only on the seed and call order.
class SensorModel {
 public:
  explicit SensorModel(std::uint64_t seed) : rng_(seed) {}

  SensorReading sense(const VehicleState& s, const MagneticAnomaly& anomaly, const Environment& env);

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> unit_{0.0, 1.0};
};

}  // namespace teleop::vehicle
