#include "teleop/headless.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

#include "teleop/errors.hpp"
#include "teleop/scenario.hpp"

namespace teleop::gateway {

namespace fs = std::filesystem;
using mission::RunSummary;

namespace {

std::string run_dir_name(int run) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "run_%03d", run);
  return buf;
}

std::string read_text(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  if (!is) throw ParseError(p.string(), "cannot open");
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::string aggregate_text(const std::vector<RunSummary>& runs) {
  std::ostringstream os;
  os << "Number of attempts per gate\n" << mission::format_attempts_table(runs) << '\n';
  os << "Statistics on acoustic communication messages\n" << mission::format_comm_table(runs);
  std::vector<double> times;
  int completed = 0;
  for (const auto& r : runs) {
    if (!r.mission.completed) continue;
    ++completed;
    times.push_back(*r.mission.total_time);
  }
  std::sort(times.begin(), times.end());
  char buf[128];
  std::snprintf(buf, sizeof buf, "\ncompleted %d/%zu", completed, runs.size());
  os << buf;
  if (!times.empty()) {
    const std::size_t n = times.size();
    const double median = n % 2 ? times[n / 2] : 0.5 * (times[n / 2 - 1] + times[n / 2]);
    std::snprintf(buf, sizeof buf, ", median total time %.1f s", median);
    os << buf;
  }
  os << '\n';
  return os.str();
}

bool is_run_dir(const fs::path& p) {
  for (const char* f : {mission::kEventsFile, mission::kTicksFile, mission::kTransmissionsFile, mission::kSummaryFile})
    if (fs::exists(p / f)) return true;
  return false;
}

int run_number(const fs::path& dir) {
  static const std::regex re("run_([0-9]+)");
  std::smatch m;
  const std::string name = dir.filename().string();
  if (std::regex_match(name, m, re)) return std::stoi(m[1].str());
  return 0;
}

void compare(const AnalyzedRun& ar, std::vector<std::string>& diag) {
  if (!ar.recorded) return;
  const auto& a = ar.recomputed;
  const auto& b = *ar.recorded;
  const std::string where = (ar.dir / mission::kSummaryFile).string() + ": ";
  if (a.run != b.run) diag.push_back(where + "run number differs from directory name");
  if (a.link_seed != b.link_seed || a.sensor_seed != b.sensor_seed)
    diag.push_back(where + "seeds differ from scenario.json");
  if (!(a.mission == b.mission)) diag.push_back(where + "mission result differs from recomputation");
  if (!(a.comm == b.comm)) diag.push_back(where + "message statistics differ from recomputation");
}

}  // namespace

RunSummary write_run(const mission::Simulation& sim, int run, const fs::path& dir) {
  fs::create_directories(dir);
  mission::write_log(sim.log(), dir);

  mission::Scenario effective = sim.scenario();
  effective.link.rng_seed = sim.seeds().link;
  effective.environment.rng_seed = sim.seeds().sensors;
  mission::write_scenario(effective, dir / "scenario.json");

  RunSummary s;
  s.run = run;
  s.link_seed = sim.seeds().link;
  s.sensor_seed = sim.seeds().sensors;
  s.mission = sim.result();
  s.comm = sim.stats();
  std::ofstream os(dir / mission::kSummaryFile, std::ios::binary);
  os << mission::summary_to_json(s) << '\n';
  if (!os) throw Error("cannot write " + (dir / mission::kSummaryFile).string());
  return s;
}

int run_headless(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.reps < 0) {
    err << "error: --reps must be >= 0\n";
    return 2;
  }
  mission::Scenario sc;
  try {
    sc = mission::load_scenario(opt.scenario);
  } catch (const Error& e) {
    err << "error: invalid scenario: " << e.what() << '\n';
    return 2;
  }
  if (opt.reps == 0) {
    out << "scenario '" << sc.name << "' is valid (" << sc.gates.size() << " gates)\n";
    return 0;
  }

  std::vector<RunSummary> runs;
  try {
    fs::create_directories(opt.out_dir);
    for (int rep = 0; rep < opt.reps; ++rep) {
      mission::Simulation sim(sc, mission::CommandSource::Scripted, mission::seeds_for(sc, opt.seed, rep));
      sim.run_to_end();
      runs.push_back(write_run(sim, rep + 1, opt.out_dir / run_dir_name(rep + 1)));
    }
    const std::string agg = aggregate_text(runs);
    std::ofstream os(opt.out_dir / "aggregate.txt", std::ios::binary);
    os << agg;
    if (!os) throw Error("cannot write " + (opt.out_dir / "aggregate.txt").string());
    out << agg;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

AnalyzeReport analyze(const fs::path& dir) {
  AnalyzeReport rep;
  if (!fs::is_directory(dir)) {
    rep.diagnostics.push_back(dir.string() + ": not a directory");
    return rep;
  }
  std::vector<fs::path> dirs;
  if (is_run_dir(dir)) {
    dirs.push_back(dir);
  } else {
    for (const auto& entry : fs::directory_iterator(dir))
      if (entry.is_directory() && is_run_dir(entry.path())) dirs.push_back(entry.path());
    std::sort(dirs.begin(), dirs.end());
  }

  for (const auto& d : dirs) {
    bool ok = true;
    auto attempt = [&](auto&& fn) {
      try {
        fn();
      } catch (const std::exception& e) {
        rep.diagnostics.push_back(e.what());
        ok = false;
      }
    };
    mission::MissionLog log;
    mission::Scenario sc;
    AnalyzedRun ar;
    ar.dir = d;
    attempt([&] { log.ticks = mission::read_ticks(d / mission::kTicksFile); });
    attempt([&] { log.events = mission::read_events(d / mission::kEventsFile); });
    attempt([&] { log.transmissions = mission::read_transmissions(d / mission::kTransmissionsFile); });
    attempt([&] {
      const auto p = d / "scenario.json";
      sc = mission::parse_scenario(read_text(p), p.string());
    });
    attempt([&] {
      const auto p = d / mission::kSummaryFile;
      ar.recorded = mission::summary_from_json(read_text(p), p.string());
    });
    if (!ok && !ar.recorded) continue;
    if (!ok) {
      // Partial output: keep the recorded row so the table still lists the run.
      ar.recomputed = *ar.recorded;
      rep.runs.push_back(std::move(ar));
      continue;
    }
    attempt([&] {
      ar.recomputed.run = run_number(d);
      if (ar.recomputed.run == 0 && ar.recorded) ar.recomputed.run = ar.recorded->run;
      ar.recomputed.link_seed = sc.link.rng_seed;
      ar.recomputed.sensor_seed = sc.environment.rng_seed;
      ar.recomputed.mission = mission::score(log, sc);
      ar.recomputed.comm = mission::comm_stats(log);
    });
    if (!ok) continue;
    compare(ar, rep.diagnostics);
    rep.runs.push_back(std::move(ar));
  }
  return rep;
}

int analyze_main(const fs::path& dir, std::ostream& out, std::ostream& err) {
  const AnalyzeReport rep = analyze(dir);
  std::vector<RunSummary> rows;
  for (const auto& r : rep.runs) rows.push_back(r.recomputed);
  out << aggregate_text(rows);
  for (const auto& d : rep.diagnostics) err << "error: " << d << '\n';
  return rep.diagnostics.empty() ? 0 : 1;
}

}  // namespace teleop::gateway
