#pragma once

#include <array>

namespace teleop {

/// Per-motor thrust in newtons. One vertical motor and two planar motors
/// whose thrust lines are parallel to the surge axis.
struct MotorThrusts {
  double vertical = 0.0;
  double left = 0.0;
  double right = 0.0;

  friend bool operator==(const MotorThrusts&, const MotorThrusts&) = default;
};

/// Generalized body-frame demand. Positive moment increases heading
/// (clockwise seen from above, z down).
struct BodyForces {
  double surge = 0.0;  ///< F_x, N
  double sway = 0.0;   ///< F_y, N; always zero for this thruster layout
  double heave = 0.0;  ///< F_z, N, positive down
  double yaw = 0.0;    ///< M_z, N*m

  friend bool operator==(const BodyForces&, const BodyForces&) = default;
};

/// Thrust allocation matrix B mapping (vertical, left, right) thrusts to
/// (F_x, F_y, F_z, M_z). The sway row is identically zero, which is what
/// makes the vehicle underactuated.
class ThrustAllocationMatrix {
 public:
  explicit ThrustAllocationMatrix(double lateral_offset);

  BodyForces forces(const MotorThrusts& t) const;
  const std::array<std::array<double, 3>, 4>& matrix() const { return b_; }
  double lateral_offset() const { return l_; }

 private:
  double l_;
  std::array<std::array<double, 3>, 4> b_;
};

}  // namespace teleop
