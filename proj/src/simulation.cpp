#include "teleop/simulation.hpp"

#include <algorithm>
#include <cmath>

#include "teleop/angles.hpp"
#include "teleop/errors.hpp"
#include "teleop/pilot.hpp"

namespace teleop::mission {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

autonomy::Setpoints initial_setpoints(const Scenario& s) {
  autonomy::Setpoints sp;
  sp.depth = s.start.z;
  sp.heading = wrap_2pi(s.start.psi + s.anomaly.bias_at(s.start.x, s.start.y));
  sp.surge_force = 0.0;
  return sp;
}

}  // namespace

RunSeeds seeds_for(const Scenario& s, std::optional<std::uint64_t> seed_override, int rep) {
  if (!seed_override && rep == 0) return {s.link.rng_seed, s.environment.rng_seed};
  const std::uint64_t base_link = seed_override ? *seed_override : s.link.rng_seed;
  const std::uint64_t base_env = seed_override ? *seed_override : s.environment.rng_seed;
  const auto r = static_cast<std::uint64_t>(rep);
  return {splitmix64(splitmix64(base_link ^ 0x6c696e6bULL) + r), splitmix64(splitmix64(base_env ^ 0x73656e73ULL) + r)};
}

Simulation::Simulation(Scenario scenario, CommandSource source, RunSeeds seeds)
    : scenario_((scenario.validate(), std::move(scenario))),
      source_(source),
      seeds_(seeds),
      dt_(from_seconds(scenario_.dt)),
      time_limit_(from_seconds(scenario_.time_limit)),
      pilot_period_ticks_(std::max<std::int64_t>(1, std::llround(1.0 / (scenario_.pilot.input_rate * scenario_.dt)))),
      link_([&] {
        link::LinkConfig cfg = scenario_.link;
        cfg.rng_seed = seeds.link;
        return cfg;
      }()),
      sensors_(seeds.sensors),
      onboard_(scenario_.gains, scenario_.allocation, scenario_.environment.pool_depth,
               -scenario_.vehicle.buoyancy_residual, initial_setpoints(scenario_)) {
  state_.x = scenario_.start.x;
  state_.y = scenario_.start.y;
  state_.z = scenario_.start.z;
  state_.psi = wrap_2pi(scenario_.start.psi);
}

void Simulation::log_event(SimTime t, EventKind kind, std::int64_t ref, std::string detail) {
  log_.events.push_back({t, kind, ref, std::move(detail)});
}

void Simulation::finish(SimTime t, std::string reason) {
  if (finished_) return;
  finished_ = true;
  log_event(t, EventKind::End, 0, std::move(reason));
}

void Simulation::submit_external(const codec::Command& cmd) {
  codec::validate(cmd);
  if (!finished_) external_.push_back(cmd);
}

void Simulation::submit(const codec::Command& cmd) {
  const std::uint8_t byte = codec::encode(cmd).value();
  link_.submit(byte, now_);
  if (source_ == CommandSource::External || last_submitted_ != byte)
    log_event(now_, EventKind::Submit, byte, codec::to_string(cmd));
  last_submitted_ = byte;
}

void Simulation::step() {
  if (finished_) return;

  // 1. link
  auto adv = link_.advance(now_);
  for (const auto& tx : adv.transmitted) {
    log_.transmissions.push_back(tx);
    log_event(tx.t_sent, EventKind::Transmit, static_cast<std::int64_t>(tx.seq),
              "byte=" + std::to_string(tx.byte) + " lost=" + (tx.lost ? "1" : "0"));
  }
  for (const auto& d : adv.delivered)
    log_event(now_, EventKind::Deliver, static_cast<std::int64_t>(d.seq), "byte=" + std::to_string(d.byte));

  // 2. operator
  if (source_ == CommandSource::Scripted) {
    if (tick_ % pilot_period_ticks_ == 0 && target_ < scenario_.gates.size())
      submit(pilot::decide(state_, scenario_.gates[target_], scenario_.pilot));
  } else {
    while (!external_.empty()) {
      submit(external_.front());
      external_.pop_front();
    }
  }

  // 3. onboard
  const auto reading = sensors_.sense(state_, scenario_.anomaly, scenario_.environment);
  auto outcome = onboard_.tick(adv.delivered, reading, now_, dt_);
  for (const auto& a : outcome.applied)
    log_event(now_, EventKind::Execute, static_cast<std::int64_t>(a.seq), "byte=" + std::to_string(a.byte));
  for (const auto& d : outcome.stale)
    log_event(now_, EventKind::Stale, static_cast<std::int64_t>(d.seq), "byte=" + std::to_string(d.byte));
  for (const auto& d : outcome.invalid)
    log_event(now_, EventKind::Invalid, static_cast<std::int64_t>(d.seq), "byte=" + std::to_string(d.byte));

  if (tick_ % scenario_.log_decimation == 0) {
    TickRow row;
    row.t = now_;
    row.x = state_.x;
    row.y = state_.y;
    row.z = state_.z;
    row.psi = state_.psi;
    row.u = state_.u;
    row.w = state_.w;
    row.r = state_.r;
    row.depth_set = onboard_.setpoints().depth;
    row.heading_set = onboard_.setpoints().heading;
    row.fz = outcome.output.heave;
    row.mz = outcome.output.yaw;
    row.fx = outcome.output.surge;
    row.desired_rate = outcome.trace.desired_rate;
    row.depth_integral = outcome.trace.depth_integral;
    row.rate_integral = outcome.trace.rate_integral;
    log_.ticks.push_back(row);
  }

  // 4. vehicle
  const double tmax = scenario_.vehicle.max_motor_thrust;
  MotorThrusts applied = outcome.thrusts;
  applied.vertical = std::clamp(applied.vertical, -tmax, tmax);
  applied.left = std::clamp(applied.left, -tmax, tmax);
  applied.right = std::clamp(applied.right, -tmax, tmax);
  const ThrustAllocationMatrix tam(scenario_.allocation.lateral_offset);

  vehicle::VehicleState next;
  try {
    next = vehicle::step(state_, tam.forces(applied), scenario_.environment, scenario_.vehicle, dt_);
  } catch (const NumericalDivergence& e) {
    finish(now_, std::string("diverged: ") + e.what());
    return;
  }

  if (target_ < scenario_.gates.size()) {
    const Gate& gate = scenario_.gates[target_];
    const auto c = detect_crossing({state_.x, state_.y, state_.z}, {next.x, next.y, next.z}, gate,
                                   scenario_.miss_near_factor);
    if (c == Crossing::Pass) {
      log_event(next.t, EventKind::Pass, gate.id);
      ++target_;
    } else if (c == Crossing::WrongSide) {
      log_event(next.t, EventKind::WrongSide, gate.id);
    } else if (c == Crossing::MissNear) {
      log_event(next.t, EventKind::MissNear, gate.id);
    }
  }

  state_ = next;
  now_ = next.t;
  ++tick_;

  if (target_ == scenario_.gates.size())
    finish(now_, "complete");
  else if (now_ >= time_limit_)
    finish(now_, "timeout");
}

void Simulation::run_to_end() {
  while (!finished_) step();
}

}  // namespace teleop::mission
