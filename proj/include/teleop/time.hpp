#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>

namespace teleop {

/// Simulation clock in integer microseconds. Tick and slot times are exact
/// multiples, so long runs never drift and logs reproduce bit-for-bit.
using SimTime = std::chrono::duration<std::int64_t, std::micro>;

/// Rounds to the nearest microsecond.
SimTime from_seconds(double seconds);
double to_seconds(SimTime t);

/// Fixed six-decimal rendering ("12.034500"); parse_seconds is its exact inverse.
std::string format_seconds(SimTime t);
SimTime parse_seconds(std::string_view text);

}  // namespace teleop
