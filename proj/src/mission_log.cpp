#include "teleop/mission_log.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "teleop/errors.hpp"

namespace teleop::mission {

namespace {

constexpr std::array<const char*, 10> kKindNames = {"submit", "tx",         "deliver",   "exec", "stale",
                                                    "invalid", "pass", "wrong_side", "miss_near", "end"};

constexpr const char* kTickHeader =
    "t,x,y,z,psi,u,w,r,depth_set,heading_set,Fz,Mz,Fx,r_des,depth_integral,rate_integral";
constexpr const char* kEventHeader = "t,kind,ref,detail";

std::vector<std::string> split_csv(const std::string& line, std::size_t max_cols) {
  std::vector<std::string> cols;
  std::size_t start = 0;
  while (cols.size() + 1 < max_cols) {
    const auto comma = line.find(',', start);
    if (comma == std::string::npos) break;
    cols.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  cols.push_back(line.substr(start));
  return cols;
}

// Quotes a free-text field when it holds a separator or quote.
std::string quote_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string unquote_field(const std::string& s) {
  if (s.empty() || s.front() != '"') return s;
  if (s.size() < 2 || s.back() != '"') throw Error("unterminated quoted field");
  std::string out;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (s[i] == '"') {
      if (i + 2 >= s.size() || s[i + 1] != '"') throw Error("stray quote in quoted field");
      ++i;
    }
    out += s[i];
  }
  return out;
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream os(p, std::ios::binary | std::ios::trunc);
  if (!os) throw Error("cannot write " + p.string());
  return os;
}

std::ifstream open_in(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  if (!is) throw ParseError(p.string(), "cannot open");
  return is;
}

}  // namespace

std::string to_string(EventKind k) { return kKindNames[static_cast<std::size_t>(k)]; }

EventKind event_kind_from_string(const std::string& s) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i)
    if (s == kKindNames[i]) return static_cast<EventKind>(i);
  throw ParseError("", "unknown event kind '" + s + "'");
}

bool is_gate_event(EventKind k) {
  return k == EventKind::Pass || k == EventKind::WrongSide || k == EventKind::MissNear;
}

void write_log(const MissionLog& log, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    auto os = open_out(dir / kTicksFile);
    os << kTickHeader << '\n';
    char buf[512];
    for (const auto& r : log.ticks) {
      std::snprintf(buf, sizeof buf, "%s,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n",
                    format_seconds(r.t).c_str(), r.x, r.y, r.z, r.psi, r.u, r.w, r.r, r.depth_set, r.heading_set, r.fz,
                    r.mz, r.fx, r.desired_rate, r.depth_integral, r.rate_integral);
      os << buf;
    }
  }
  {
    auto os = open_out(dir / kEventsFile);
    os << kEventHeader << '\n';
    for (const auto& e : log.events) {
      if (e.detail.find('\n') != std::string::npos) throw Error("event detail may not contain newlines");
      os << format_seconds(e.t) << ',' << to_string(e.kind) << ',' << e.ref << ',' << quote_field(e.detail) << '\n';
    }
  }
  {
    auto os = open_out(dir / kTransmissionsFile);
    link::write_transmissions_csv(os, log.transmissions);
  }
}

std::vector<TickRow> read_ticks(const std::filesystem::path& path) {
  std::vector<TickRow> rows;
  {
    auto is = open_in(path);
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(is, line) || line != kTickHeader) throw ParseError(path.string() + ":1", "unexpected header");
    while (std::getline(is, line)) {
      ++line_no;
      if (line.empty()) continue;
      const auto cols = split_csv(line, 16);
      const std::string where = path.string() + ":" + std::to_string(line_no);
      if (cols.size() != 16) throw ParseError(where, "expected 16 columns");
      try {
        TickRow r;
        r.t = parse_seconds(cols[0]);
        double* fields[] = {&r.x,  &r.y,  &r.z,  &r.psi,          &r.u,           &r.w,           &r.r,
                            &r.depth_set,     &r.heading_set,  &r.fz,          &r.mz, &r.fx, &r.desired_rate,
                            &r.depth_integral, &r.rate_integral};
        for (std::size_t i = 0; i < 15; ++i) *fields[i] = std::stod(cols[i + 1]);
        rows.push_back(r);
      } catch (const std::exception& e) {
        throw ParseError(where, e.what());
      }
    }
  }
  return rows;
}

std::vector<Event> read_events(const std::filesystem::path& path) {
  std::vector<Event> events;
  {
    auto is = open_in(path);
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(is, line) || line != kEventHeader) throw ParseError(path.string() + ":1", "unexpected header");
    while (std::getline(is, line)) {
      ++line_no;
      if (line.empty()) continue;
      const auto cols = split_csv(line, 4);
      const std::string where = path.string() + ":" + std::to_string(line_no);
      if (cols.size() != 4) throw ParseError(where, "expected 4 columns");
      try {
        Event e;
        e.t = parse_seconds(cols[0]);
        e.kind = event_kind_from_string(cols[1]);
        e.ref = std::stoll(cols[2]);
        e.detail = unquote_field(cols[3]);
        events.push_back(std::move(e));
      } catch (const std::exception& e) {
        throw ParseError(where, e.what());
      }
    }
  }
  return events;
}

std::vector<link::Transmission> read_transmissions(const std::filesystem::path& path) {
  auto is = open_in(path);
  return link::read_transmissions_csv(is, path.string());
}

MissionLog read_log(const std::filesystem::path& dir) {
  MissionLog log;
  log.ticks = read_ticks(dir / kTicksFile);
  log.events = read_events(dir / kEventsFile);
  log.transmissions = read_transmissions(dir / kTransmissionsFile);
  return log;
}

}  // namespace teleop::mission
