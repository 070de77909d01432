// Command-line front end: sweep, trace and verify.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "inewton/harness/config.hpp"
#include "inewton/harness/sweep.hpp"
#include "inewton/harness/trace.hpp"
#include "inewton/harness/verify.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kRunFailure = 1;
constexpr int kConfigError = 2;

int cmd_sweep(const std::string& config_path, const std::string& out) {
  using namespace inewton::harness;
  const ExperimentConfig cfg = load_config(config_path);
  const auto dir = resolve_output_dir(cfg, out);
  const SweepResult res = run_sweep(cfg, dir);
  std::cout << to_csv(res.rows);
  for (const auto& r : res.rows) {
    if (!r.completed) std::cerr << "run " << r.case_name << " / " << r.strategy << ": " << r.status << "\n";
  }
  std::cerr << "wrote " << res.csv_path.string() << " and " << res.trace_paths.size() << " traces\n";
  return res.all_completed() ? kOk : kRunFailure;
}

int cmd_trace(const std::string& config_path, int step, const std::string& out) {
  using namespace inewton::harness;
  const ExperimentConfig cfg = load_config(config_path);
  const auto paths = write_traces(cfg, step, resolve_output_dir(cfg, out));
  for (const auto& p : paths) std::cout << p.string() << "\n";
  return kOk;
}

int cmd_verify(unsigned long long seed) {
  bool all = true;
  for (const auto& c : inewton::harness::run_verification(seed)) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " : " << c.detail << "\n";
    all = all && c.passed;
  }
  return all ? kOk : kRunFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inexact Newton experiment runner"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out;
  int step = 0;
  unsigned long long seed = 20240611;

  auto* sweep = app.add_subcommand("sweep", "run every strategy on every configured problem, write CSV + traces");
  sweep->add_option("--config", config_path, "experiment JSON")->required();
  sweep->add_option("--out", out, "output directory (overrides INEWTON_OUT_DIR and the config)");

  auto* trace = app.add_subcommand("trace", "write oversolving traces for one step");
  trace->add_option("--config", config_path, "experiment JSON")->required();
  trace->add_option("--step", step, "step index (0 for steady problems)")->required();
  trace->add_option("--out", out, "output directory");

  auto* verify = app.add_subcommand("verify", "run the verification checks");
  verify->add_option("--seed", seed, "sampling seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    if (*sweep) return cmd_sweep(config_path, out);
    if (*trace) return cmd_trace(config_path, step, out);
    return cmd_verify(seed);
  } catch (const inewton::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRunFailure;
  }
}
