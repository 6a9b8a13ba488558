#include <gtest/gtest.h>

#include <fstream>

#include <filesystem>

#include "teleop/errors.hpp"
#include "teleop/mission_log.hpp"
#include "teleop/scenario.hpp"
#include "teleop/stats.hpp"

using namespace teleop;
using namespace teleop::mission;

namespace {

SimTime s(double sec) { return from_seconds(sec); }

Scenario four_gates() { return load_scenario("pool_4gate"); }

Event gate_event(double t, EventKind k, int gate) { return {s(t), k, gate, ""}; }

// A slot every 1.6 s; `bytes` per slot and which are lost.
MissionLog channel_log(const std::vector<int>& bytes, const std::vector<bool>& lost, double delay) {
  MissionLog log;
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    link::Transmission tx;
    tx.seq = i + 1;
    tx.t_sent = s(1.6 * (i + 1));
    tx.byte = static_cast<std::uint8_t>(bytes[i]);
    tx.lost = lost[i];
    tx.t_arrive = tx.lost ? SimTime{} : tx.t_sent + s(delay);
    log.transmissions.push_back(tx);
    if (!tx.lost) log.events.push_back({tx.t_arrive, EventKind::Execute, static_cast<std::int64_t>(tx.seq), ""});
  }
  return log;
}

}  // namespace

TEST(Score, CleanRun) {
  MissionLog log;
  log.events = {gate_event(10, EventKind::Pass, 1), gate_event(50, EventKind::Pass, 2),
                gate_event(90, EventKind::Pass, 3), gate_event(139, EventKind::Pass, 4),
                {s(139), EventKind::End, 0, "complete"}};
  const auto r = score(log, four_gates());
  EXPECT_EQ(r.attempts, (std::vector<int>{1, 1, 1, 1}));
  EXPECT_TRUE(r.completed);
  ASSERT_TRUE(r.total_time);
  EXPECT_DOUBLE_EQ(*r.total_time, 129.0);
}

TEST(Score, MissThenPass) {
  MissionLog log;
  log.events = {gate_event(8, EventKind::MissNear, 1), gate_event(20, EventKind::Pass, 1),
                gate_event(50, EventKind::Pass, 2),    gate_event(90, EventKind::Pass, 3),
                gate_event(150, EventKind::Pass, 4)};
  const auto r = score(log, four_gates());
  EXPECT_EQ(r.attempts, (std::vector<int>{2, 1, 1, 1}));
  EXPECT_DOUBLE_EQ(*r.total_time, 142.0);
}

TEST(Score, TimeoutBeforeGateThree) {
  MissionLog log;
  log.events = {gate_event(8, EventKind::Pass, 1), gate_event(60, EventKind::WrongSide, 2),
                gate_event(80, EventKind::Pass, 2), gate_event(300, EventKind::MissNear, 3),
                {s(600), EventKind::End, 0, "timeout"}};
  const auto r = score(log, four_gates());
  EXPECT_FALSE(r.completed);
  EXPECT_EQ(r.gates_passed, 2);
  EXPECT_EQ(r.attempts, (std::vector<int>{1, 2, 1, 0}));
  EXPECT_EQ(r.end_reason, "timeout");
  EXPECT_DOUBLE_EQ(*r.total_time, 592.0);
}

TEST(Score, UnknownGateIsAnError) {
  MissionLog log;
  log.events = {gate_event(8, EventKind::Pass, 9)};
  EXPECT_THROW(score(log, four_gates()), ParseError);
}

TEST(CommStats, LossOverVariations) {
  // 62 variations, 6 of them lost, with repeats in between that are
  // sometimes lost as well and must not count.
  std::vector<int> bytes;
  std::vector<bool> lost;
  for (int v = 0; v < 62; ++v) {
    bytes.push_back(v % 2 ? 10 : 20);
    lost.push_back(v % 10 == 3);
    for (int rep = 0; rep < 2; ++rep) {
      bytes.push_back(bytes.back());
      lost.push_back(rep == 1);
    }
  }
  const auto st = comm_stats(channel_log(bytes, lost, 1.9));
  EXPECT_EQ(st.command_variations, 62);
  EXPECT_EQ(st.variations_lost, 6);  // v = 3, 13, ..., 53
  EXPECT_EQ(st.commands_sent, 186);
}

TEST(CommStats, TableExample) {
  std::vector<int> bytes;
  std::vector<bool> lost;
  for (int v = 0; v < 62; ++v) {
    bytes.push_back(v);
    lost.push_back(v < 6);
  }
  const auto st = comm_stats(channel_log(bytes, lost, 1.9));
  EXPECT_EQ(st.command_variations, 62);
  EXPECT_EQ(st.variations_lost, 6);
  EXPECT_NEAR(st.loss_pct, 9.677, 0.001);
  EXPECT_EQ(static_cast<int>(std::lround(st.loss_pct)), 10);
}

TEST(CommStats, RepeatsCountOnlyTheFirst) {
  const auto st = comm_stats(channel_log(std::vector<int>(20, 5), std::vector<bool>(20, false), 1.9));
  EXPECT_EQ(st.command_variations, 1);
  EXPECT_EQ(st.commands_sent, 20);
}

TEST(CommStats, ConstantDelay) {
  const auto st = comm_stats(channel_log({1, 2, 3, 4}, {false, false, false, false}, 2.0));
  EXPECT_EQ(st.delay_samples, 4);
  EXPECT_DOUBLE_EQ(st.delay_mean, 2.0);
  EXPECT_EQ(st.delay_var, 0.0);
}

TEST(CommStats, EmptyLog) {
  const auto st = comm_stats(MissionLog{});
  EXPECT_EQ(st, CommStats{});
}

TEST(CommStats, InjectedDelaysReproducedExactly) {
  MissionLog log = channel_log({1, 2, 3}, {false, false, false}, 1.0);
  log.events[1].t += s(0.5);  // executed 1.5 s after sending
  log.events[2].t += s(1.0);  // 2.0 s
  const auto st = comm_stats(log);
  EXPECT_DOUBLE_EQ(st.delay_mean, 1.5);
  EXPECT_DOUBLE_EQ(st.delay_var, ((0.5 * 0.5) + 0 + (0.5 * 0.5)) / 3.0);
}

TEST(Summary, JsonRoundtrip) {
  RunSummary s1;
  s1.run = 3;
  s1.link_seed = 0xffffffffffffffffULL;
  s1.sensor_seed = 12;
  s1.mission.attempts = {1, 2, 1, 1};
  s1.mission.gates_passed = 4;
  s1.mission.completed = true;
  s1.mission.total_time = 171.03;
  s1.mission.end_reason = "complete";
  s1.mission.end_time = 180.01;
  s1.comm.commands_sent = 111;
  s1.comm.command_variations = 42;
  s1.comm.variations_lost = 1;
  s1.comm.loss_pct = 100.0 / 42.0;
  s1.comm.delay_mean = 1.9712345678901234;
  EXPECT_EQ(summary_from_json(summary_to_json(s1), "mem"), s1);
  EXPECT_THROW(summary_from_json("{}", "mem"), ParseError);
}

TEST(MissionLog, WriteReadRoundtripKeepsStatistics) {
  const auto dir = std::filesystem::temp_directory_path() / "teleop_log_roundtrip";
  std::filesystem::remove_all(dir);
  MissionLog log = channel_log({1, 2, 2, 3}, {false, true, false, false}, 1.9);
  log.events.push_back({s(3.2), EventKind::Submit, 7, ""});
  log.events.push_back({s(3.3), EventKind::Submit, 8, "heading 4, forward, hold"});
  log.events.push_back({s(3.4), EventKind::Submit, 9, "a \"quoted\" word"});
  log.events.push_back(gate_event(12.345678, EventKind::MissNear, 1));
  TickRow row;
  row.t = s(0.1);
  row.x = 1.0 / 3.0;
  log.ticks.push_back(row);
  write_log(log, dir);
  const MissionLog back = read_log(dir);
  EXPECT_EQ(back.events, log.events);
  EXPECT_EQ(back.transmissions, log.transmissions);
  ASSERT_EQ(back.ticks.size(), 1u);
  EXPECT_EQ(back.ticks[0].t, row.t);
  EXPECT_EQ(comm_stats(back), comm_stats(log));
  std::filesystem::remove_all(dir);
}

TEST(MissionLog, EventDetailIsQuotedCsv) {
  const auto dir = std::filesystem::temp_directory_path() / "teleop_log_quoting";
  std::filesystem::remove_all(dir);
  MissionLog log;
  log.events.push_back({s(1.0), EventKind::Submit, 73, "heading 4, forward, hold"});
  write_log(log, dir);
  std::ifstream is(dir / kEventsFile);
  std::string header, row;
  std::getline(is, header);
  std::getline(is, row);
  EXPECT_EQ(row, "1.000000,submit,73,\"heading 4, forward, hold\"");
  std::filesystem::remove_all(dir);
}
