#pragma once

// Decides which connection, if any, may command the vehicle. With the
// scripted pilot in charge no connection may. Otherwise the first
// connection to send a command holds the seat until it disconnects;
// everyone else can watch but not steer.

#include <cstdint>
#include <optional>
#include <set>

namespace teleop::gateway {

using ClientId = std::uint64_t;

enum class Verdict { Accepted, ScriptedPilot, SeatTaken, UnknownClient };

const char* to_string(Verdict v);

class Arbiter {
 public:
  explicit Arbiter(bool scripted) : scripted_(scripted) {}

  void connect(ClientId id);
  void disconnect(ClientId id);
  Verdict command(ClientId id);

  bool scripted() const { return scripted_; }
  std::optional<ClientId> owner() const { return owner_; }
  std::size_t clients() const { return connected_.size(); }
  /// True once any client has connected; an external-mode run waits for this.
  bool ever_connected() const { return ever_connected_; }

 private:
  bool scripted_;
  std::set<ClientId> connected_;
  std::optional<ClientId> owner_;
  bool ever_connected_ = false;
};

}  // namespace teleop::gateway
