#pragma once

// On-disk record of one run: a decimated state trace, a time-ordered event
// stream and the link's ground-truth transmission records. Every time value
// is written with microsecond resolution, which is the simulation clock
// resolution, so statistics recomputed from the files match the live run
// exactly.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "teleop/link.hpp"
#include "teleop/time.hpp"

namespace teleop::mission {

struct TickRow {
  SimTime t{};
  double x = 0, y = 0, z = 0, psi = 0, u = 0, w = 0, r = 0;
  double depth_set = 0, heading_set = 0;
  double fz = 0, mz = 0, fx = 0;
  double desired_rate = 0, depth_integral = 0, rate_integral = 0;
};

enum class EventKind {
  Submit,     ///< operator byte handed to the surface modem; ref = byte
  Transmit,   ///< slot fired; ref = seq
  Deliver,    ///< byte reached the vehicle; ref = seq
  Execute,    ///< vehicle applied the command; ref = seq
  Stale,      ///< arrived after a newer one and was dropped; ref = seq
  Invalid,    ///< reserved byte received and ignored; ref = seq
  Pass,       ///< ref = gate id
  WrongSide,  ///< ref = gate id
  MissNear,   ///< ref = gate id
  End,        ///< detail = complete | timeout | diverged
};

std::string to_string(EventKind k);
EventKind event_kind_from_string(const std::string& s);
bool is_gate_event(EventKind k);

struct Event {
  SimTime t{};
  EventKind kind = EventKind::End;
  std::int64_t ref = 0;
  std::string detail;

  friend bool operator==(const Event&, const Event&) = default;
};

struct MissionLog {
  std::vector<TickRow> ticks;
  std::vector<Event> events;
  std::vector<link::Transmission> transmissions;
};

inline constexpr const char* kTicksFile = "ticks.csv";
inline constexpr const char* kEventsFile = "events.csv";
inline constexpr const char* kTransmissionsFile = "transmissions.csv";
inline constexpr const char* kSummaryFile = "summary.json";

/// Writes ticks.csv, events.csv and transmissions.csv into `dir` (created if missing).
void write_log(const MissionLog& log, const std::filesystem::path& dir);
/// Reads the three files back. Throws ParseError naming the file and line.
MissionLog read_log(const std::filesystem::path& dir);

std::vector<TickRow> read_ticks(const std::filesystem::path& path);
std::vector<Event> read_events(const std::filesystem::path& path);
std::vector<link::Transmission> read_transmissions(const std::filesystem::path& path);

}  // namespace teleop::mission
