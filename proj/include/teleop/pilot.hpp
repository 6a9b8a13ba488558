#pragma once

// Scripted operator for headless runs. Like the poolside human it sees the
// true vehicle pose, and like the human it can only speak the quantized
// command language: a heading sector, a thrust state and a depth nudge.
//
// Steering is pure pursuit onto the gate axis (the line through the gate
// center along its normal). Farther than `approach_offset` before the
// plane, or once within the lateral tolerance, it aims `lookahead` metres
// further along the axis. Closer than that and still off the axis it backs
// out to the approach point. It never plans around delays.

#include "teleop/angles.hpp"
#include "teleop/codec.hpp"
#include "teleop/gate.hpp"
#include "teleop/vehicle.hpp"

namespace teleop::pilot {

struct PilotConfig {
  double input_rate = 10.0;                          ///< Hz
  double alignment_tolerance = deg_to_rad(11.25);    ///< rad
  double approach_slow_radius = 1.0;                 ///< m
  double depth_deadband = 0.05;                      ///< m
  double approach_offset = 1.0;                      ///< m before the plane
  double lookahead = 1.5;                            ///< m along the axis
  double lateral_tolerance = 0.5;                    ///< fraction of aperture half-width
  double depth_tolerance = 0.5;                      ///< fraction of aperture half-height
  double compass_offset = 0.0;  ///< rad, operator's estimate of the magnetometer bias

  void validate() const;
  friend bool operator==(const PilotConfig&, const PilotConfig&) = default;
};

/// Horizontal point the pilot is steering toward.
struct AimPoint {
  double x = 0.0;
  double y = 0.0;
  bool through = false;  ///< on the axis and committed to the crossing
};

AimPoint aim_point(const vehicle::VehicleState& s, const mission::Gate& gate, const PilotConfig& cfg);

codec::Command decide(const vehicle::VehicleState& s, const mission::Gate& gate, const PilotConfig& cfg);

}  // namespace teleop::pilot
