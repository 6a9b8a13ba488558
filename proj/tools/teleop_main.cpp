// teleop: headless batch runs, interactive serving and log analysis.

#include <atomic>
#include <csignal>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "teleop/errors.hpp"
#include "teleop/headless.hpp"
#include "teleop/scenario.hpp"
#include "teleop/service.hpp"

namespace {

std::atomic<bool> g_interrupted{false};

void on_signal(int) { g_interrupted = true; }

int serve(const std::string& scenario, const std::string& bind, double scale, const std::string& pilot,
          std::optional<std::uint64_t> seed, const std::string& out, double feedback_delay, bool exit_on_finish) {
  using namespace teleop;
  gateway::ServiceOptions opt;
  try {
    opt.scenario = mission::load_scenario(scenario);
  } catch (const Error& e) {
    std::cerr << "error: invalid scenario: " << e.what() << '\n';
    return 2;
  }
  opt.scripted = pilot == "scripted";
  opt.bind = bind;
  opt.time_scale = scale;
  opt.feedback_delay = feedback_delay;
  opt.seed = seed;
  if (!out.empty()) opt.out_dir = out;

  std::unique_ptr<gateway::Service> svc;
  try {
    svc = std::make_unique<gateway::Service>(opt);
    svc->start();
  } catch (const ContractViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cout << "serving '" << opt.scenario.name << "' on ws://" << bind.substr(0, bind.rfind(':')) << ':'
            << svc->port() << " (" << (opt.scripted ? "scripted pilot" : "operator console") << ", x" << scale
            << ")" << std::endl;
  while (!g_interrupted) {
    if (svc->wait_finished(std::chrono::milliseconds(100)) && exit_on_finish) break;
  }
  svc->stop();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Teleoperation test-bed for an acoustically commanded underwater vehicle"};
  app.require_subcommand(1);

  std::string scenario = "pool_4gate";
  std::optional<std::uint64_t> seed;
  int reps = 1;
  std::string out = "out";
  std::string pilot = "scripted";

  auto* run = app.add_subcommand("run", "Run missions with the scripted pilot and write logs");
  run->add_option("--scenario", scenario, "Scenario file or bundled scenario name")->capture_default_str();
  run->add_option("--seed", seed, "Seed for the link and sensor streams");
  run->add_option("--reps", reps, "Number of repetitions (0 only validates the scenario)")->capture_default_str();
  run->add_option("--out", out, "Output directory")->capture_default_str();
  run->add_option("--pilot", pilot, "Command source")->check(CLI::IsMember({"scripted"}))->capture_default_str();

  std::string bind = "127.0.0.1:8765";
  double scale = 1.0;
  double feedback_delay = 0.0;
  bool exit_on_finish = false;
  std::string serve_pilot = "external";
  std::string serve_out;
  auto* srv = app.add_subcommand("serve", "Run one mission in real time and serve operator consoles");
  srv->add_option("--scenario", scenario, "Scenario file or bundled scenario name")->capture_default_str();
  srv->add_option("--bind", bind, "host:port to listen on")->capture_default_str();
  srv->add_option("--time-scale", scale, "Simulated seconds per wall second (0: as fast as possible)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  srv->add_option("--pilot", serve_pilot, "Command source")
      ->check(CLI::IsMember({"external", "scripted"}))
      ->capture_default_str();
  srv->add_option("--seed", seed, "Seed for the link and sensor streams");
  srv->add_option("--out", serve_out, "Write the run's logs here when it ends");
  srv->add_option("--feedback-delay", feedback_delay, "Telemetry lag in simulated seconds")
      ->check(CLI::NonNegativeNumber);
  srv->add_flag("--exit-on-finish", exit_on_finish, "Stop serving once the mission ends");

  std::string log_dir;
  auto* ana = app.add_subcommand("analyze", "Recompute mission and message statistics from logs");
  ana->add_option("log_dir", log_dir, "A run directory or a directory of runs")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version requests are successes; any other usage error is invalid input.
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (*run) {
    teleop::gateway::RunOptions opt;
    opt.scenario = scenario;
    opt.seed = seed;
    opt.reps = reps;
    opt.out_dir = out;
    return teleop::gateway::run_headless(opt, std::cout, std::cerr);
  }
  if (*srv) return serve(scenario, bind, scale, serve_pilot, seed, serve_out, feedback_delay, exit_on_finish);
  return teleop::gateway::analyze_main(log_dir, std::cout, std::cerr);
}
