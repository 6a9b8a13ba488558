#pragma once

// Fixed-step driver tying the operator side, the link and the vehicle
// together. Per tick at time t:
//   1. the link fires any slot at t and hands over arrivals
//   2. the command source (pilot or queued external commands) submits
//   3. sensors are read, the onboard controllers run, thrusts are applied
//   4. the vehicle advances to t + dt and the motion is checked against
//      the current target gate

#include <cstdint>
#include <deque>
#include <optional>

#include "teleop/autonomy.hpp"
#include "teleop/link.hpp"
#include "teleop/mission_log.hpp"
#include "teleop/scenario.hpp"
#include "teleop/stats.hpp"
#include "teleop/vehicle.hpp"

namespace teleop::mission {

enum class CommandSource { Scripted, External };

struct RunSeeds {
  std::uint64_t link = 0;
  std::uint64_t sensors = 0;

  friend bool operator==(const RunSeeds&, const RunSeeds&) = default;
};

/// Seeds for repetition `rep`. Without an override, rep 0 uses the
/// scenario's own seeds; every other combination is mixed so repetitions
/// get independent streams.
RunSeeds seeds_for(const Scenario& s, std::optional<std::uint64_t> seed_override, int rep);

class Simulation {
 public:
  Simulation(Scenario scenario, CommandSource source, RunSeeds seeds);

  /// Queues an operator command for the next tick. Ignored once finished.
  void submit_external(const codec::Command& cmd);

  void step();
  /// Steps until finished (time limit caps every run).
  void run_to_end();

  bool finished() const { return finished_; }
  SimTime now() const { return now_; }
  const vehicle::VehicleState& state() const { return state_; }
  const autonomy::Setpoints& setpoints() const { return onboard_.setpoints(); }
  const link::Link& link() const { return link_; }
  const MissionLog& log() const { return log_; }
  const Scenario& scenario() const { return scenario_; }
  const RunSeeds& seeds() const { return seeds_; }
  /// Index into scenario().gates of the gate being attempted; == size() when done.
  std::size_t target_gate() const { return target_; }

  MissionResult result() const { return score(log_, scenario_); }
  CommStats stats() const { return comm_stats(log_); }

 private:
  void log_event(SimTime t, EventKind kind, std::int64_t ref, std::string detail = {});
  void finish(SimTime t, std::string reason);
  void submit(const codec::Command& cmd);

  Scenario scenario_;
  CommandSource source_;
  RunSeeds seeds_;
  SimTime dt_;
  SimTime time_limit_;
  std::int64_t pilot_period_ticks_;
  link::Link link_;
  vehicle::SensorModel sensors_;
  autonomy::Onboard onboard_;
  vehicle::VehicleState state_;
  SimTime now_{};
  std::int64_t tick_ = 0;
  std::size_t target_ = 0;
  bool finished_ = false;
  std::optional<std::uint8_t> last_submitted_;
  std::deque<codec::Command> external_;
  MissionLog log_;
};

}  // namespace teleop::mission
