#pragma once

// Batch runs with the scripted pilot and offline recomputation of their
// statistics. Layout of an output directory:
//
//   out/run_001/{ticks,events,transmissions}.csv
//   out/run_001/scenario.json   scenario with this run's seeds filled in
//   out/run_001/summary.json
//   out/aggregate.txt           attempts and message tables over all runs

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "teleop/simulation.hpp"
#include "teleop/stats.hpp"

namespace teleop::gateway {

struct RunOptions {
  std::string scenario = "pool_4gate";  ///< path or bundled name
  std::optional<std::uint64_t> seed;
  std::filesystem::path out_dir = "out";
  int reps = 1;  ///< 0 validates the scenario and writes nothing
};

/// Returns the process exit status. Diagnostics go to `err`, tables to `out`.
int run_headless(const RunOptions& opt, std::ostream& out, std::ostream& err);

/// Writes one run directory. `run` is the 1-based row number.
mission::RunSummary write_run(const mission::Simulation& sim, int run, const std::filesystem::path& dir);

struct AnalyzedRun {
  std::filesystem::path dir;
  mission::RunSummary recomputed;
  std::optional<mission::RunSummary> recorded;  ///< summary.json, if readable
};

struct AnalyzeReport {
  std::vector<AnalyzedRun> runs;
  std::vector<std::string> diagnostics;  ///< one per unreadable file or mismatch
};

/// `dir` is either a single run directory or a directory of them.
AnalyzeReport analyze(const std::filesystem::path& dir);
int analyze_main(const std::filesystem::path& dir, std::ostream& out, std::ostream& err);

}  // namespace teleop::gateway
