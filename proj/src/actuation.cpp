#include "teleop/actuation.hpp"

#include "teleop/errors.hpp"

namespace teleop {

ThrustAllocationMatrix::ThrustAllocationMatrix(double lateral_offset) : l_(lateral_offset) {
  if (!(lateral_offset > 0.0)) throw ContractViolation("lateral_offset must be > 0");
  //        vertical  left   right
  b_ = {{{0.0, 1.0, 1.0},      // F_x
         {0.0, 0.0, 0.0},      // F_y
         {1.0, 0.0, 0.0},      // F_z
         {0.0, -l_, l_}}};     // M_z
}

BodyForces ThrustAllocationMatrix::forces(const MotorThrusts& t) const {
  const std::array<double, 3> v{t.vertical, t.left, t.right};
  std::array<double, 4> out{};
  for (std::size_t row = 0; row < 4; ++row)
    for (std::size_t col = 0; col < 3; ++col) out[row] += b_[row][col] * v[col];
  return {out[0], out[1], out[2], out[3]};
}

}  // namespace teleop
