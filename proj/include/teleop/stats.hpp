#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "teleop/mission_log.hpp"
#include "teleop/scenario.hpp"

namespace teleop::mission {

struct MissionResult {
  std::vector<int> attempts;  ///< per gate in traversal order
  int gates_passed = 0;
  bool completed = false;
  /// First attempt at the first gate to the pass of the last one. For an
  /// incomplete run, first attempt to end of log; empty if never attempted.
  std::optional<double> total_time;
  std::string end_reason;  ///< complete | timeout | diverged | "" if the log has no end event
  double end_time = 0.0;

  friend bool operator==(const MissionResult&, const MissionResult&) = default;
};

/// Message statistics computed over the link's ground truth. Loss counts
/// only command variations: slots whose byte differs from the previous
/// slot's byte (the first slot is always a variation).
struct CommStats {
  int commands_sent = 0;
  int command_variations = 0;
  int variations_lost = 0;
  double loss_pct = 0.0;
  /// Send-to-execution delay over executed commands; population variance.
  int delay_samples = 0;
  double delay_mean = 0.0;
  double delay_var = 0.0;

  friend bool operator==(const CommStats&, const CommStats&) = default;
};

/// Attempts per gate are the failed crossings (miss_near, wrong_side) plus
/// one for the pass, if any. Pure function of the log.
MissionResult score(const MissionLog& log, const Scenario& scenario);
CommStats comm_stats(const MissionLog& log);

struct RunSummary {
  int run = 0;
  std::uint64_t link_seed = 0;
  std::uint64_t sensor_seed = 0;
  MissionResult mission;
  CommStats comm;

  friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

std::string summary_to_json(const RunSummary& s);
RunSummary summary_from_json(const std::string& text, const std::string& source);

/// Attempts-per-gate table, one row per run.
std::string format_attempts_table(std::span<const RunSummary> runs);
/// Communication statistics table, one row per run.
std::string format_comm_table(std::span<const RunSummary> runs);

}  // namespace teleop::mission
