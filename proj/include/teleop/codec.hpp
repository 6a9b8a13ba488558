#pragma once

// Single-byte command protocol. The operator's desired state is quantized
// into 16 headings x 5 thrust states x 3 depth steps = 240 codes, packed
// mixed-radix with heading as the most significant digit:
//
//   byte = heading_idx * 15 + thrust * 3 + depth_step
//
// Codes 240..255 are reserved and always rejected.

#include <cstdint>
#include <string>

namespace teleop::codec {

inline constexpr int kHeadingSteps = 16;
inline constexpr int kThrustStates = 5;
inline constexpr int kDepthSteps = 3;
inline constexpr int kCommandCount = kHeadingSteps * kThrustStates * kDepthSteps;
inline constexpr double kHeadingStepDeg = 360.0 / kHeadingSteps;

enum class Thrust : std::uint8_t { Back = 0, SlowBack = 1, Stop = 2, SlowForward = 3, Forward = 4 };

/// Depth increment. Lower means deeper (z grows), Raise means shallower.
enum class DepthStep : std::uint8_t { Lower = 0, Hold = 1, Raise = 2 };

struct Command {
  int heading_idx = 0;  ///< 0 = sensor-frame North, clockwise, 22.5 deg per step
  Thrust thrust = Thrust::Stop;
  DepthStep depth = DepthStep::Hold;

  friend bool operator==(const Command&, const Command&) = default;
};

/// Throws InvalidCommand if any field is outside its range.
void validate(const Command& cmd);

/// A byte known to be in 0..239.
class EncodedByte {
 public:
  /// Throws InvalidByte for 240..255.
  static EncodedByte from_raw(std::uint8_t raw);

  std::uint8_t value() const noexcept { return value_; }
  friend bool operator==(EncodedByte, EncodedByte) = default;

 private:
  explicit EncodedByte(std::uint8_t v) : value_(v) {}
  friend EncodedByte encode(const Command& cmd);
  std::uint8_t value_;
};

EncodedByte encode(const Command& cmd);
Command decode(EncodedByte b);
/// Validates then decodes a raw received byte.
Command decode(std::uint8_t raw);

/// Heading in degrees, [0, 360). Throws InvalidCommand outside 0..15.
double heading_of(int heading_idx);

/// Nearest of the 16 sectors to an arbitrary heading in degrees (any range).
int nearest_heading_idx(double heading_deg);

int thrust_index(Thrust t);
int depth_index(DepthStep d);
/// Checked conversions from wire integers; throw InvalidCommand.
Thrust thrust_from_index(int i);
DepthStep depth_from_index(int i);

std::string to_string(const Command& cmd);

}  // namespace teleop::codec
