#pragma once

// Reference implementations the library is checked against. They are
// written from the definitions, not from the library code, and favour
// obviousness over speed.

#include <cmath>
#include <cstdint>
#include <optional>

#include "teleop/gate.hpp"

namespace oracle {

/// Ordinal of (heading, thrust, depth) when all 240 commands are listed in
/// lexicographic order, found by counting.
int ordinal_by_counting(int heading, int thrust, int depth);

enum class Verdict { None, Pass, WrongSide, MissNear };

/// Gate crossing by brute force: sample the segment at `samples` evenly
/// spaced points, look for the first pair of neighbours on opposite sides
/// of the plane, locate the plane between them, then test the hit point
/// against the aperture in world coordinates.
Verdict crossing_by_subdivision(const teleop::mission::Vec3& a, const teleop::mission::Vec3& b,
                                const teleop::mission::Gate& g, double near_factor = 2.0, int samples = 1001);

/// Mean and variance of a normal(mu, sigma^2) truncated below at `lo`.
struct Moments {
  double mean;
  double var;
};
Moments truncated_normal(double mu, double sigma, double lo);

}  // namespace oracle
