#include "teleop/stats.hpp"

#include <cstdio>
#include <map>
#include <sstream>

#include "json.hpp"
#include "teleop/errors.hpp"

namespace teleop::mission {

using nlohmann::json;

MissionResult score(const MissionLog& log, const Scenario& scenario) {
  MissionResult res;
  const auto& gates = scenario.gates;
  res.attempts.assign(gates.size(), 0);
  std::map<int, std::size_t> index_of;
  for (std::size_t i = 0; i < gates.size(); ++i) index_of[gates[i].id] = i;

  std::vector<bool> passed(gates.size(), false);
  std::optional<SimTime> first_attempt;
  std::optional<SimTime> final_pass;
  SimTime end{};

  for (const auto& e : log.events) {
    end = std::max(end, e.t);
    if (e.kind == EventKind::End) res.end_reason = e.detail;
    if (!is_gate_event(e.kind)) continue;
    const auto it = index_of.find(static_cast<int>(e.ref));
    if (it == index_of.end()) throw ParseError("events", "gate event references unknown gate " + std::to_string(e.ref));
    const std::size_t gi = it->second;
    if (passed[gi]) continue;
    if (gi == 0 && !first_attempt) first_attempt = e.t;
    ++res.attempts[gi];
    if (e.kind == EventKind::Pass) {
      passed[gi] = true;
      if (gi + 1 == gates.size()) final_pass = e.t;
    }
  }
  for (const auto& row : log.ticks) end = std::max(end, row.t);

  for (bool p : passed) res.gates_passed += p ? 1 : 0;
  const SimTime limit = from_seconds(scenario.time_limit);
  res.completed = res.gates_passed == static_cast<int>(gates.size()) && final_pass && *final_pass <= limit;
  res.end_time = to_seconds(end);
  if (first_attempt) {
    const SimTime stop = res.completed ? *final_pass : end;
    res.total_time = to_seconds(stop - *first_attempt);
  }
  return res;
}

CommStats comm_stats(const MissionLog& log) {
  CommStats st;
  std::map<std::uint64_t, SimTime> sent_at;
  std::optional<std::uint8_t> prev;
  for (const auto& tx : log.transmissions) {
    ++st.commands_sent;
    sent_at[tx.seq] = tx.t_sent;
    if (!prev || *prev != tx.byte) {
      ++st.command_variations;
      if (tx.lost) ++st.variations_lost;
    }
    prev = tx.byte;
  }
  if (st.command_variations > 0) st.loss_pct = 100.0 * st.variations_lost / st.command_variations;

  std::vector<double> delays;
  for (const auto& e : log.events) {
    if (e.kind != EventKind::Execute) continue;
    const auto it = sent_at.find(static_cast<std::uint64_t>(e.ref));
    if (it == sent_at.end()) continue;
    delays.push_back(to_seconds(e.t - it->second));
  }
  st.delay_samples = static_cast<int>(delays.size());
  if (!delays.empty()) {
    double sum = 0.0;
    for (double d : delays) sum += d;
    st.delay_mean = sum / delays.size();
    double ss = 0.0;
    for (double d : delays) ss += (d - st.delay_mean) * (d - st.delay_mean);
    st.delay_var = ss / delays.size();
  }
  return st;
}

std::string summary_to_json(const RunSummary& s) {
  json mission = {{"attempts", s.mission.attempts},
                  {"gates_passed", s.mission.gates_passed},
                  {"completed", s.mission.completed},
                  {"total_time", s.mission.total_time ? json(*s.mission.total_time) : json(nullptr)},
                  {"end_reason", s.mission.end_reason},
                  {"end_time", s.mission.end_time}};
  json comm = {{"commands_sent", s.comm.commands_sent},   {"command_variations", s.comm.command_variations},
               {"variations_lost", s.comm.variations_lost}, {"loss_pct", s.comm.loss_pct},
               {"delay_samples", s.comm.delay_samples},     {"delay_mean", s.comm.delay_mean},
               {"delay_var", s.comm.delay_var}};
  json j = {{"run", s.run},
            {"link_seed", s.link_seed},
            {"sensor_seed", s.sensor_seed},
            {"mission", mission},
            {"comm", comm}};
  return j.dump(2) + "\n";
}

RunSummary summary_from_json(const std::string& text, const std::string& source) {
  try {
    const json j = json::parse(text);
    RunSummary s;
    s.run = j.at("run").get<int>();
    s.link_seed = j.at("link_seed").get<std::uint64_t>();
    s.sensor_seed = j.at("sensor_seed").get<std::uint64_t>();
    const json& m = j.at("mission");
    s.mission.attempts = m.at("attempts").get<std::vector<int>>();
    s.mission.gates_passed = m.at("gates_passed").get<int>();
    s.mission.completed = m.at("completed").get<bool>();
    if (!m.at("total_time").is_null()) s.mission.total_time = m.at("total_time").get<double>();
    s.mission.end_reason = m.at("end_reason").get<std::string>();
    s.mission.end_time = m.at("end_time").get<double>();
    const json& c = j.at("comm");
    s.comm.commands_sent = c.at("commands_sent").get<int>();
    s.comm.command_variations = c.at("command_variations").get<int>();
    s.comm.variations_lost = c.at("variations_lost").get<int>();
    s.comm.loss_pct = c.at("loss_pct").get<double>();
    s.comm.delay_samples = c.at("delay_samples").get<int>();
    s.comm.delay_mean = c.at("delay_mean").get<double>();
    s.comm.delay_var = c.at("delay_var").get<double>();
    return s;
  } catch (const json::exception& e) {
    throw ParseError(source, e.what());
  }
}

std::string format_attempts_table(std::span<const RunSummary> runs) {
  std::size_t gate_count = 0;
  for (const auto& r : runs) gate_count = std::max(gate_count, r.mission.attempts.size());
  std::ostringstream os;
  os << "Test N. | Total test time [s] | Completed";
  for (std::size_t g = 0; g < gate_count; ++g) os << " | Gate " << g + 1 << " Attempts";
  os << '\n';
  char buf[64];
  for (const auto& r : runs) {
    os << "Test " << r.run << " | ";
    if (r.mission.total_time) {
      std::snprintf(buf, sizeof buf, "%.1f", *r.mission.total_time);
      os << buf;
    } else {
      os << "-";
    }
    os << " | " << (r.mission.completed ? "yes" : "no");
    for (std::size_t g = 0; g < gate_count; ++g)
      os << " | " << (g < r.mission.attempts.size() ? std::to_string(r.mission.attempts[g]) : "-");
    os << '\n';
  }
  return os.str();
}

std::string format_comm_table(std::span<const RunSummary> runs) {
  std::ostringstream os;
  os << "Test N. | Message loss percentage (lost/variations) | Command variations | Commands sent | "
        "Message delay average [s] | Message delay variance [s^2]\n";
  char buf[256];
  for (const auto& r : runs) {
    std::snprintf(buf, sizeof buf, "Test %d | %.0f%% (%d/%d) | %d | %d | %.2f | %.2f\n", r.run, r.comm.loss_pct,
                  r.comm.variations_lost, r.comm.command_variations, r.comm.command_variations,
                  r.comm.commands_sent, r.comm.delay_mean, r.comm.delay_var);
    os << buf;
  }
  return os.str();
}

}  // namespace teleop::mission
