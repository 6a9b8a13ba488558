#pragma once

// Interactive session: a simulation paced against the wall clock and a
// websocket endpoint for operator consoles.
//
// Threads: one runs the network (accepting, reading, writing), the other
// runs the simulation and owns every piece of simulation state. Network
// handlers only push messages onto the inbound queue; the simulation
// thread only hands finished frames back to the network thread.

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "teleop/scenario.hpp"
#include "teleop/time.hpp"

namespace teleop::gateway {

struct ServiceOptions {
  mission::Scenario scenario;
  bool scripted = false;            ///< scripted pilot instead of a console operator
  std::string bind = "127.0.0.1:8765";
  double time_scale = 1.0;          ///< simulated seconds per wall second; 0 runs as fast as possible
  double feedback_delay = 0.0;      ///< s of simulated time the telemetry lags behind the vehicle
  double telemetry_rate = 10.0;     ///< frames per wall second
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out_dir;  ///< logs of the run are written here when it ends

  void validate() const;
};

/// Wall-clock time at which the simulation executed a slot.
struct SlotTiming {
  SimTime t_sim{};
  std::chrono::steady_clock::time_point wall;
};

class Service {
 public:
  explicit Service(ServiceOptions opt);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds and starts both threads. Throws if the address is unusable.
  void start();
  void stop();
  /// Blocks until the run has finished or `timeout` elapses.
  bool wait_finished(std::chrono::milliseconds timeout);

  unsigned short port() const;
  bool finished() const;
  /// Wall time corresponding to simulated time zero, once the run is going.
  std::optional<std::chrono::steady_clock::time_point> started_at() const;
  std::vector<SlotTiming> slot_timings() const;

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
};

}  // namespace teleop::gateway
