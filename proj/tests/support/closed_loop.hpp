#pragma once

// Onboard controllers driving the vehicle model directly, without the
// link or a pilot. Used for step responses and the bias checks.

#include <functional>
#include <vector>

#include "teleop/autonomy.hpp"
#include "teleop/time.hpp"
#include "teleop/vehicle.hpp"

namespace loop {

struct Plant {
  teleop::vehicle::VehicleParams vehicle;
  teleop::vehicle::Environment env;
  teleop::vehicle::MagneticAnomaly anomaly;
  teleop::autonomy::ControllerGains gains = teleop::autonomy::default_gains();
  teleop::autonomy::AllocationConfig alloc;
  teleop::SimTime dt = teleop::SimTime(10000);
};

/// Pool, gains and vehicle defaults with every sensor noise set to zero.
Plant noiseless();

struct Sample {
  double t;
  teleop::vehicle::VehicleState state;
  teleop::vehicle::SensorReading reading;
};

/// Runs for `duration` seconds holding `setpoints`; returns one sample per tick.
std::vector<Sample> hold(const Plant& p, const teleop::vehicle::VehicleState& start,
                         const teleop::autonomy::Setpoints& setpoints, double duration);

}  // namespace loop
