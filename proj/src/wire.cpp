#include "teleop/wire.hpp"

#include "json.hpp"
#include "teleop/errors.hpp"

namespace teleop::wire {

using nlohmann::json;

namespace {

json opt_byte(const std::optional<std::uint8_t>& b) { return b ? json(*b) : json(nullptr); }

std::optional<std::uint8_t> byte_from(const json& j, const char* key) {
  const json& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  if (!v.is_number_unsigned() || v.get<unsigned>() > 255) throw Error(std::string(key) + " must be a byte or null");
  return static_cast<std::uint8_t>(v.get<unsigned>());
}

int int_field(const json& j, const char* key, int lo, int hi) {
  if (!j.contains(key)) throw Error(std::string("missing field '") + key + "'");
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw Error(std::string("'") + key + "' must be an integer");
  const auto n = v.get<std::int64_t>();
  if (n < lo || n > hi)
    throw Error(std::string("'") + key + "' out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(n);
}

double num(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number()) throw Error(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

CommandFrame command_from(const json& j) {
  CommandFrame f;
  f.command.heading_idx = int_field(j, "heading_idx", 0, codec::kHeadingSteps - 1);
  f.command.thrust = codec::thrust_from_index(int_field(j, "thrust_state", 0, codec::kThrustStates - 1));
  f.command.depth = codec::depth_from_index(int_field(j, "depth_inc", 0, codec::kDepthSteps - 1));
  return f;
}

Frame decode_object(const json& j) {
  if (!j.is_object()) throw Error("frame must be a JSON object");
  if (!j.contains("type") || !j.at("type").is_string()) throw Error("frame has no string 'type'");
  const std::string type = j.at("type").get<std::string>();
  if (type == "command") return command_from(j);
  if (type == "telemetry") {
    Telemetry t;
    t.t = num(j, "t");
    t.x = num(j, "x");
    t.y = num(j, "y");
    t.z = num(j, "z");
    t.psi = num(j, "psi");
    t.depth_set = num(j, "depth_set");
    t.heading_set = num(j, "heading_set");
    const json& l = j.at("link");
    t.next_slot_in = num(l, "next_slot_in");
    t.last_byte = byte_from(l, "last_byte");
    t.pending = byte_from(l, "pending");
    return t;
  }
  if (type == "event") {
    EventFrame e;
    e.t = num(j, "t");
    e.kind = j.at("kind").get<std::string>();
    e.ref = j.at("ref").get<std::int64_t>();
    e.detail = j.at("detail").get<std::string>();
    return e;
  }
  if (type == "summary") {
    json body = j;
    body.erase("type");
    return SummaryFrame{mission::summary_from_json(body.dump(), "summary frame")};
  }
  if (type == "error") return ErrorFrame{j.value("message", std::string())};
  throw Error("unknown frame type '" + type + "'");
}

}  // namespace

std::string encode(const Frame& f) {
  struct Visitor {
    json operator()(const Telemetry& t) const {
      return {{"type", "telemetry"},
              {"t", t.t},
              {"x", t.x},
              {"y", t.y},
              {"z", t.z},
              {"psi", t.psi},
              {"depth_set", t.depth_set},
              {"heading_set", t.heading_set},
              {"link", {{"next_slot_in", t.next_slot_in}, {"last_byte", opt_byte(t.last_byte)},
                        {"pending", opt_byte(t.pending)}}}};
    }
    json operator()(const CommandFrame& c) const {
      return {{"type", "command"},
              {"heading_idx", c.command.heading_idx},
              {"thrust_state", codec::thrust_index(c.command.thrust)},
              {"depth_inc", codec::depth_index(c.command.depth)}};
    }
    json operator()(const EventFrame& e) const {
      return {{"type", "event"}, {"t", e.t}, {"kind", e.kind}, {"ref", e.ref}, {"detail", e.detail}};
    }
    json operator()(const SummaryFrame& s) const {
      json j = json::parse(mission::summary_to_json(s.summary));
      j["type"] = "summary";
      return j;
    }
    json operator()(const ErrorFrame& e) const { return {{"type", "error"}, {"message", e.message}}; }
  };
  return std::visit(Visitor{}, f).dump();
}

Frame decode(const std::string& text) {
  try {
    return decode_object(json::parse(text));
  } catch (const json::exception& e) {
    return ErrorFrame{std::string("malformed frame: ") + e.what()};
  } catch (const std::exception& e) {
    return ErrorFrame{e.what()};
  }
}

std::variant<CommandFrame, ErrorFrame> decode_client(const std::string& text) {
  Frame f = decode(text);
  if (auto* c = std::get_if<CommandFrame>(&f)) return *c;
  if (auto* e = std::get_if<ErrorFrame>(&f)) return *e;
  return ErrorFrame{"only command frames are accepted"};
}

}  // namespace teleop::wire
