#include "teleop/arbiter.hpp"

namespace teleop::gateway {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Accepted: return "accepted";
    case Verdict::ScriptedPilot: return "the scripted pilot is in command";
    case Verdict::SeatTaken: return "another operator is in command";
    case Verdict::UnknownClient: return "unknown connection";
  }
  return "?";
}

void Arbiter::connect(ClientId id) {
  connected_.insert(id);
  ever_connected_ = true;
}

void Arbiter::disconnect(ClientId id) {
  connected_.erase(id);
  if (owner_ == id) owner_.reset();
}

Verdict Arbiter::command(ClientId id) {
  if (!connected_.contains(id)) return Verdict::UnknownClient;
  if (scripted_) return Verdict::ScriptedPilot;
  if (!owner_) owner_ = id;
  return *owner_ == id ? Verdict::Accepted : Verdict::SeatTaken;
}

}  // namespace teleop::gateway
