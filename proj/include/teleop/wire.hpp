#pragma once

// JSON frames exchanged with the operator console, one per websocket text
// message. Every frame is an object with a "type" member:
//
//   telemetry  t, x, y, z, psi, depth_set, heading_set,
//              link {next_slot_in, last_byte, pending}   (s, m, rad; bytes or null)
//   command    heading_idx, thrust_state, depth_inc      (console -> gateway)
//   event      t, kind, ref, detail
//   summary    the run summary object
//   error      message

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "teleop/codec.hpp"
#include "teleop/stats.hpp"

namespace teleop::wire {

struct Telemetry {
  double t = 0, x = 0, y = 0, z = 0, psi = 0;
  double depth_set = 0, heading_set = 0;
  double next_slot_in = 0;
  std::optional<std::uint8_t> last_byte;
  std::optional<std::uint8_t> pending;

  friend bool operator==(const Telemetry&, const Telemetry&) = default;
};

struct CommandFrame {
  codec::Command command;

  friend bool operator==(const CommandFrame&, const CommandFrame&) = default;
};

struct EventFrame {
  double t = 0;
  std::string kind;
  std::int64_t ref = 0;
  std::string detail;

  friend bool operator==(const EventFrame&, const EventFrame&) = default;
};

struct SummaryFrame {
  mission::RunSummary summary;

  friend bool operator==(const SummaryFrame&, const SummaryFrame&) = default;
};

struct ErrorFrame {
  std::string message;

  friend bool operator==(const ErrorFrame&, const ErrorFrame&) = default;
};

using Frame = std::variant<Telemetry, CommandFrame, EventFrame, SummaryFrame, ErrorFrame>;

std::string encode(const Frame& f);

/// Parses any frame. Malformed input, an unknown type or out-of-range
/// command fields come back as an ErrorFrame describing the problem.
Frame decode(const std::string& text);

/// What the gateway accepts from a console: a command, or the error to send back.
std::variant<CommandFrame, ErrorFrame> decode_client(const std::string& text);

}  // namespace teleop::wire
