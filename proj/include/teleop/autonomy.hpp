#pragma once

// Onboard shared-autonomy layer. Received command bytes move the setpoints;
// between messages the vehicle keeps tracking the last ones:
//   depth:   PID on pressure depth -> F_z
//   heading: P on heading error -> desired yaw rate -> PID on gyro rate -> M_z
//   surge:   open loop, F_x straight from the thrust state
// and the allocation matrix turns (F_x, F_z, M_z) into three motor thrusts.

#include <cstdint>
#include <span>
#include <vector>

#include "teleop/actuation.hpp"
#include "teleop/codec.hpp"
#include "teleop/link.hpp"
#include "teleop/time.hpp"
#include "teleop/vehicle.hpp"

namespace teleop::autonomy {

struct Setpoints {
  double depth = 0.0;        ///< m
  double heading = 0.0;      ///< rad, sensor frame
  double surge_force = 0.0;  ///< N

  friend bool operator==(const Setpoints&, const Setpoints&) = default;
};

struct PidGains {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;
  double integral_limit = 1.0;  ///< bound on the integral term (already scaled by ki)
  double output_limit = 1.0;
  double derivative_filter = 0.0;  ///< first-order low-pass time constant on the D term, s

  void validate() const;
  friend bool operator==(const PidGains&, const PidGains&) = default;
};

struct ControllerGains {
  PidGains depth;
  double heading_kp = 2.0;     ///< outer loop, (rad/s) per rad
  double max_yaw_rate = 1.0;   ///< rad/s
  PidGains yaw_rate;

  void validate() const;
  friend bool operator==(const ControllerGains&, const ControllerGains&) = default;
};

ControllerGains default_gains();

struct AllocationConfig {
  double lateral_offset = 0.08;   ///< m, planar motor arm
  double max_motor_thrust = 2.0;  ///< N
  double slow_force = 0.5;        ///< N
  double max_force = 1.5;         ///< N
  double depth_step = 0.025;      ///< m per Lower/Raise message

  void validate() const;
  friend bool operator==(const AllocationConfig&, const AllocationConfig&) = default;
};

struct ControlOutput {
  double surge = 0.0;  ///< F_x, N
  double heave = 0.0;  ///< F_z, N
  double yaw = 0.0;    ///< M_z, N*m
};

/// PID with clamped integral term and clamped output. The derivative acts
/// on the measurement, so setpoint jumps (depth increments) do not kick.
class Pid {
 public:
  explicit Pid(PidGains gains);

  double update(double setpoint, double measurement, double dt);
  void reset();

  double error() const { return error_; }
  double integral() const { return integral_; }
  double derivative() const { return derivative_; }
  const PidGains& gains() const { return gains_; }

 private:
  PidGains gains_;
  double error_ = 0.0;
  double integral_ = 0.0;
  double derivative_ = 0.0;
  double prev_measurement_ = 0.0;
  bool primed_ = false;
};

double surge_force_for(codec::Thrust thrust, const AllocationConfig& cfg);

/// Heading from the sector index; surge force from the thrust map; depth
/// moves by (depth_inc - 1) * depth_step and is clamped to [0, pool_depth].
Setpoints apply_command(const Setpoints& sp, const codec::Command& cmd, const AllocationConfig& cfg,
                        double pool_depth);

class DepthController {
 public:
  DepthController(PidGains gains, double feed_forward);
  double update(double depth_meas, double depth_set, double dt);
  const Pid& pid() const { return pid_; }

 private:
  Pid pid_;
  double feed_forward_;
};

class HeadingController {
 public:
  HeadingController(double outer_kp, double max_yaw_rate, PidGains inner);
  double update(double heading_meas, double yaw_rate_meas, double heading_set, double dt);

  double desired_rate() const { return desired_rate_; }
  const Pid& inner() const { return inner_; }

 private:
  double outer_kp_;
  double max_yaw_rate_;
  Pid inner_;
  double desired_rate_ = 0.0;
};

/// Maps demands to motor thrusts. Planar saturation sheds surge first and
/// only then yaw moment, so heading authority is kept as long as possible.
MotorThrusts allocate(const ControlOutput& out, const AllocationConfig& cfg);

/// Thrust to normalized motor command in [-1, 1] (signed square root of the
/// thrust fraction, matching a quadratic propeller curve) and back.
double motor_command(double thrust, double max_motor_thrust);
double thrust_from_command(double command, double max_motor_thrust);

struct AppliedCommand {
  std::uint64_t seq = 0;
  std::uint8_t byte = 0;
  SimTime t_sent{};
  SimTime t_exec{};
};

struct ControllerTrace {
  double depth_error = 0.0;
  double depth_integral = 0.0;
  double desired_rate = 0.0;
  double rate_integral = 0.0;
};

struct TickOutcome {
  MotorThrusts thrusts;
  ControlOutput output;
  ControllerTrace trace;
  std::vector<AppliedCommand> applied;
  std::vector<link::Delivery> stale;
  std::vector<link::Delivery> invalid;
};

/// Everything that runs on the vehicle computer, ticked once per sim step.
class Onboard {
 public:
  Onboard(const ControllerGains& gains, const AllocationConfig& alloc, double pool_depth, double feed_forward,
          Setpoints initial);

  /// Arrivals must be in arrival order. Stale and reserved bytes are
  /// reported and skipped; the rest update the setpoints in order.
  TickOutcome tick(std::span<const link::Delivery> arrivals, const vehicle::SensorReading& sensors, SimTime now,
                   SimTime dt);

  const Setpoints& setpoints() const { return setpoints_; }

 private:
  AllocationConfig alloc_;
  double pool_depth_;
  Setpoints setpoints_;
  link::StaleFilter stale_;
  DepthController depth_;
  HeadingController heading_;
};

}  // namespace teleop::autonomy
