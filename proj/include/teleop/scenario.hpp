#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "teleop/autonomy.hpp"
#include "teleop/gate.hpp"
#include "teleop/link.hpp"
#include "teleop/pilot.hpp"
#include "teleop/vehicle.hpp"

namespace teleop::mission {

struct StartPose {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double psi = 0.0;  ///< rad, true yaw

  friend bool operator==(const StartPose&, const StartPose&) = default;
};

/// Everything needed to reproduce a run. Times in seconds, lengths in
/// metres, angles in radians. Random streams are seeded from link.rng_seed
/// and environment.rng_seed.
struct Scenario {
  std::string name;
  vehicle::Environment environment;
  vehicle::MagneticAnomaly anomaly;
  vehicle::VehicleParams vehicle;
  autonomy::AllocationConfig allocation;
  autonomy::ControllerGains gains = autonomy::default_gains();
  link::LinkConfig link;
  pilot::PilotConfig pilot;
  std::vector<Gate> gates;  ///< sorted by order after loading
  StartPose start;
  double time_limit = 600.0;
  double dt = 0.01;
  int log_decimation = 10;        ///< ticks per state row
  double miss_near_factor = 2.0;  ///< near-miss zone as a multiple of the aperture

  /// Throws ParseError whose location points at the offending field.
  void validate() const;
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Parses scenario JSON. Omitted fields keep their defaults; unknown fields
/// are errors. `source` prefixes error locations.
Scenario parse_scenario(const std::string& json_text, const std::string& source = "scenario");
std::string scenario_to_json(const Scenario& s);

/// Accepts a path, or the name of a bundled scenario ("pool_4gate").
Scenario load_scenario(const std::string& path_or_name);
void write_scenario(const Scenario& s, const std::filesystem::path& path);

std::filesystem::path bundled_scenario_dir();

}  // namespace teleop::mission
