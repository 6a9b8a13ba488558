#include <gtest/gtest.h>

#include "json.hpp"
#include "teleop/wire.hpp"

using namespace teleop;
using namespace teleop::wire;
using nlohmann::json;

namespace {

bool is_error(const Frame& f) { return std::holds_alternative<ErrorFrame>(f); }

}  // namespace

TEST(Wire, TelemetryFieldNames) {
  Telemetry t{12.5, 3.0, 4.0, 0.5, 1.5, 0.6, 1.57, 0.3, 117, std::nullopt};
  const json j = json::parse(encode(t));
  EXPECT_EQ(j["type"], "telemetry");
  for (const char* k : {"t", "x", "y", "z", "psi", "depth_set", "heading_set"}) EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j["link"]["next_slot_in"], 0.3);
  EXPECT_EQ(j["link"]["last_byte"], 117);
  EXPECT_TRUE(j["link"]["pending"].is_null());
  EXPECT_EQ(std::get<Telemetry>(decode(encode(t))), t);
}

TEST(Wire, CommandRoundtrip) {
  const CommandFrame c{{9, codec::Thrust::SlowForward, codec::DepthStep::Raise}};
  const json j = json::parse(encode(c));
  EXPECT_EQ(j, json::parse(R"({"type":"command","heading_idx":9,"thrust_state":3,"depth_inc":2})"));
  const auto back = decode_client(encode(c));
  ASSERT_TRUE(std::holds_alternative<CommandFrame>(back));
  EXPECT_EQ(std::get<CommandFrame>(back), c);
}

TEST(Wire, EventAndSummaryRoundtrip) {
  const EventFrame e{12.34, "pass", 2, ""};
  EXPECT_EQ(std::get<EventFrame>(decode(encode(e))), e);
  mission::RunSummary s;
  s.run = 1;
  s.mission.attempts = {1, 1, 2, 1};
  s.mission.total_time = 150.0;
  const json j = json::parse(encode(SummaryFrame{s}));
  EXPECT_EQ(j["type"], "summary");
  EXPECT_EQ(std::get<SummaryFrame>(decode(encode(SummaryFrame{s}))).summary, s);
}

TEST(Wire, UnknownTypeRejected) {
  const Frame f = decode(R"({"type":"teleport","x":1})");
  ASSERT_TRUE(is_error(f));
  EXPECT_EQ(json::parse(encode(f))["type"], "error");
}

TEST(Wire, MalformedRejected) {
  EXPECT_TRUE(is_error(decode("not json")));
  EXPECT_TRUE(is_error(decode("[1,2]")));
  EXPECT_TRUE(is_error(decode(R"({"heading_idx":1})")));
}

TEST(Wire, CommandFieldsChecked) {
  for (const char* bad : {R"({"type":"command","heading_idx":16,"thrust_state":2,"depth_inc":1})",
                          R"({"type":"command","heading_idx":1,"thrust_state":5,"depth_inc":1})",
                          R"({"type":"command","heading_idx":1,"thrust_state":2,"depth_inc":-1})",
                          R"({"type":"command","heading_idx":1.5,"thrust_state":2,"depth_inc":1})",
                          R"({"type":"command","heading_idx":"1","thrust_state":2,"depth_inc":1})",
                          R"({"type":"command","heading_idx":1,"thrust_state":2})"}) {
    const auto r = decode_client(bad);
    EXPECT_TRUE(std::holds_alternative<ErrorFrame>(r)) << bad;
  }
}

TEST(Wire, ClientMayOnlySendCommands) {
  const Telemetry t{};
  EXPECT_TRUE(std::holds_alternative<ErrorFrame>(decode_client(encode(t))));
}
