#include "teleop/autonomy.hpp"

#include <algorithm>
#include <cmath>

#include "teleop/angles.hpp"
#include "teleop/errors.hpp"

namespace teleop::autonomy {

void PidGains::validate() const {
  if (!(kp >= 0.0 && ki >= 0.0 && kd >= 0.0)) throw ContractViolation("PID gains must be >= 0");
  if (!(integral_limit > 0.0 && output_limit > 0.0)) throw ContractViolation("PID limits must be > 0");
  if (!(derivative_filter >= 0.0)) throw ContractViolation("PID derivative_filter must be >= 0");
}

void ControllerGains::validate() const {
  depth.validate();
  yaw_rate.validate();
  if (!(heading_kp >= 0.0)) throw ContractViolation("heading_kp must be >= 0");
  if (!(max_yaw_rate > 0.0)) throw ContractViolation("max_yaw_rate must be > 0");
}

ControllerGains default_gains() {
  ControllerGains g;
  g.depth = PidGains{.kp = 20.0, .ki = 2.0, .kd = 10.0, .integral_limit = 0.5, .output_limit = 2.0,
                     .derivative_filter = 0.2};
  g.heading_kp = 2.0;
  g.max_yaw_rate = 1.0;
  g.yaw_rate = PidGains{.kp = 0.5, .ki = 0.05, .kd = 0.0, .integral_limit = 0.1, .output_limit = 0.32,
                        .derivative_filter = 0.0};
  return g;
}

void AllocationConfig::validate() const {
  if (!(lateral_offset > 0.0)) throw ContractViolation("allocation.lateral_offset must be > 0");
  if (!(max_motor_thrust > 0.0)) throw ContractViolation("allocation.max_motor_thrust must be > 0");
  if (!(slow_force > 0.0 && slow_force < max_force && max_force <= 2.0 * max_motor_thrust))
    throw ContractViolation("allocation requires 0 < slow_force < max_force <= 2*max_motor_thrust");
  if (!(depth_step > 0.0)) throw ContractViolation("allocation.depth_step must be > 0");
}

Pid::Pid(PidGains gains) : gains_(gains) { gains_.validate(); }

void Pid::reset() {
  error_ = integral_ = derivative_ = 0.0;
  primed_ = false;
}

double Pid::update(double setpoint, double measurement, double dt) {
  if (!(dt > 0.0)) throw ContractViolation("PID dt must be > 0");
  error_ = setpoint - measurement;
  integral_ = std::clamp(integral_ + gains_.ki * error_ * dt, -gains_.integral_limit, gains_.integral_limit);

  const double raw = primed_ ? -(measurement - prev_measurement_) / dt : 0.0;
  prev_measurement_ = measurement;
  primed_ = true;
  if (gains_.derivative_filter > 0.0)
    derivative_ += dt / (gains_.derivative_filter + dt) * (raw - derivative_);
  else
    derivative_ = raw;

  const double out = gains_.kp * error_ + integral_ + gains_.kd * derivative_;
  return std::clamp(out, -gains_.output_limit, gains_.output_limit);
}

double surge_force_for(codec::Thrust thrust, const AllocationConfig& cfg) {
  switch (thrust) {
    case codec::Thrust::Back: return -cfg.max_force;
    case codec::Thrust::SlowBack: return -cfg.slow_force;
    case codec::Thrust::Stop: return 0.0;
    case codec::Thrust::SlowForward: return cfg.slow_force;
    case codec::Thrust::Forward: return cfg.max_force;
  }
  throw InvalidCommand("unknown thrust state");
}

Setpoints apply_command(const Setpoints& sp, const codec::Command& cmd, const AllocationConfig& cfg,
                        double pool_depth) {
  codec::validate(cmd);
  Setpoints next = sp;
  next.heading = deg_to_rad(codec::heading_of(cmd.heading_idx));
  next.surge_force = surge_force_for(cmd.thrust, cfg);
  // z is positive down: Raise (+1 step) makes the vehicle shallower.
  const int steps = codec::depth_index(cmd.depth) - 1;
  next.depth = std::clamp(sp.depth - steps * cfg.depth_step, 0.0, pool_depth);
  return next;
}

DepthController::DepthController(PidGains gains, double feed_forward) : pid_(gains), feed_forward_(feed_forward) {}

double DepthController::update(double depth_meas, double depth_set, double dt) {
  return pid_.update(depth_set, depth_meas, dt) + feed_forward_;
}

HeadingController::HeadingController(double outer_kp, double max_yaw_rate, PidGains inner)
    : outer_kp_(outer_kp), max_yaw_rate_(max_yaw_rate), inner_(inner) {}

double HeadingController::update(double heading_meas, double yaw_rate_meas, double heading_set, double dt) {
  desired_rate_ = std::clamp(outer_kp_ * wrap_pi(heading_set - heading_meas), -max_yaw_rate_, max_yaw_rate_);
  return inner_.update(desired_rate_, yaw_rate_meas, dt);
}

MotorThrusts allocate(const ControlOutput& out, const AllocationConfig& cfg) {
  const double tmax = cfg.max_motor_thrust;
  double half_surge = out.surge / 2.0;
  double turn = out.yaw / (2.0 * cfg.lateral_offset);

  if (std::abs(half_surge) + std::abs(turn) > tmax) {
    if (std::abs(turn) >= tmax) {
      half_surge = 0.0;
      turn = std::clamp(turn, -tmax, tmax);
    } else {
      const double room = tmax - std::abs(turn);
      half_surge = std::copysign(room, half_surge);
    }
  }
  MotorThrusts t;
  t.vertical = std::clamp(out.heave, -tmax, tmax);
  t.left = std::clamp(half_surge - turn, -tmax, tmax);
  t.right = std::clamp(half_surge + turn, -tmax, tmax);
  return t;
}

double motor_command(double thrust, double max_motor_thrust) {
  const double frac = std::clamp(std::abs(thrust) / max_motor_thrust, 0.0, 1.0);
  return std::copysign(std::sqrt(frac), thrust);
}

double thrust_from_command(double command, double max_motor_thrust) {
  const double c = std::clamp(command, -1.0, 1.0);
  return std::copysign(c * c * max_motor_thrust, c);
}

Onboard::Onboard(const ControllerGains& gains, const AllocationConfig& alloc, double pool_depth, double feed_forward,
                 Setpoints initial)
    : alloc_(alloc),
      pool_depth_(pool_depth),
      setpoints_(initial),
      depth_(gains.depth, feed_forward),
      heading_(gains.heading_kp, gains.max_yaw_rate, gains.yaw_rate) {
  gains.validate();
  alloc_.validate();
}

TickOutcome Onboard::tick(std::span<const link::Delivery> arrivals, const vehicle::SensorReading& sensors,
                          SimTime now, SimTime dt_time) {
  TickOutcome out;
  for (const auto& d : arrivals) {
    if (!stale_.accept(d.seq)) {
      out.stale.push_back(d);
      continue;
    }
    codec::Command cmd;
    try {
      cmd = codec::decode(d.byte);
    } catch (const InvalidByte&) {
      out.invalid.push_back(d);
      continue;
    }
    setpoints_ = apply_command(setpoints_, cmd, alloc_, pool_depth_);
    out.applied.push_back({d.seq, d.byte, d.t_sent, now});
  }

  const double dt = to_seconds(dt_time);
  out.output.surge = setpoints_.surge_force;
  out.output.heave = depth_.update(sensors.depth, setpoints_.depth, dt);
  out.output.yaw = heading_.update(sensors.heading, sensors.yaw_rate, setpoints_.heading, dt);
  out.thrusts = allocate(out.output, alloc_);

  out.trace.depth_error = depth_.pid().error();
  out.trace.depth_integral = depth_.pid().integral();
  out.trace.desired_rate = heading_.desired_rate();
  out.trace.rate_integral = heading_.inner().integral();
  return out;
}

}  // namespace teleop::autonomy
