#include "teleop/codec.hpp"

#include <cmath>

#include "teleop/errors.hpp"

namespace teleop::codec {

int thrust_index(Thrust t) { return static_cast<int>(t); }
int depth_index(DepthStep d) { return static_cast<int>(d); }

Thrust thrust_from_index(int i) {
  if (i < 0 || i >= kThrustStates) throw InvalidCommand("thrust_state " + std::to_string(i) + " outside 0..4");
  return static_cast<Thrust>(i);
}

DepthStep depth_from_index(int i) {
  if (i < 0 || i >= kDepthSteps) throw InvalidCommand("depth_inc " + std::to_string(i) + " outside 0..2");
  return static_cast<DepthStep>(i);
}

void validate(const Command& cmd) {
  if (cmd.heading_idx < 0 || cmd.heading_idx >= kHeadingSteps)
    throw InvalidCommand("heading_idx " + std::to_string(cmd.heading_idx) + " outside 0..15");
  thrust_from_index(thrust_index(cmd.thrust));
  depth_from_index(depth_index(cmd.depth));
}

EncodedByte EncodedByte::from_raw(std::uint8_t raw) {
  if (raw >= kCommandCount) throw InvalidByte("byte " + std::to_string(raw) + " is reserved (>= 240)");
  return EncodedByte{raw};
}

EncodedByte encode(const Command& cmd) {
  validate(cmd);
  const int v = cmd.heading_idx * (kThrustStates * kDepthSteps) + thrust_index(cmd.thrust) * kDepthSteps +
                depth_index(cmd.depth);
  return EncodedByte{static_cast<std::uint8_t>(v)};
}

Command decode(EncodedByte b) {
  const int v = b.value();
  Command cmd;
  cmd.heading_idx = v / (kThrustStates * kDepthSteps);
  cmd.thrust = static_cast<Thrust>((v / kDepthSteps) % kThrustStates);
  cmd.depth = static_cast<DepthStep>(v % kDepthSteps);
  return cmd;
}

Command decode(std::uint8_t raw) { return decode(EncodedByte::from_raw(raw)); }

double heading_of(int heading_idx) {
  if (heading_idx < 0 || heading_idx >= kHeadingSteps)
    throw InvalidCommand("heading_idx " + std::to_string(heading_idx) + " outside 0..15");
  return heading_idx * kHeadingStepDeg;
}

int nearest_heading_idx(double heading_deg) {
  double w = std::fmod(heading_deg, 360.0);
  if (w < 0.0) w += 360.0;
  const int idx = static_cast<int>(std::lround(w / kHeadingStepDeg));
  return idx % kHeadingSteps;
}

std::string to_string(const Command& cmd) {
  static constexpr const char* kThrustNames[] = {"back", "slow-back", "stop", "slow-forward", "forward"};
  static constexpr const char* kDepthNames[] = {"lower", "hold", "raise"};
  return "heading " + std::to_string(cmd.heading_idx) + ", " + kThrustNames[thrust_index(cmd.thrust)] + ", " +
         kDepthNames[depth_index(cmd.depth)];
}

}  // namespace teleop::codec
