#pragma once

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "inewton/harness/config.hpp"
#include "inewton/harness/runs.hpp"

namespace inewton::harness {

struct SweepRow {
  std::string case_name;
  std::string strategy;
  int inner = 0;
  int outer = 0;
  int cuts = 0;
  long long ms = 0;
  bool completed = false;
  std::string status;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  fs::path csv_path;
  std::vector<fs::path> trace_paths;

  [[nodiscard]] bool all_completed() const {
    for (const auto& r : rows) {
      if (!r.completed) return false;
    }
    return true;
  }
};

inline constexpr const char* kCsvHeader = "case,strategy,inner,outer,cuts,ms";

/// Output directory: explicit argument, then INEWTON_OUT_DIR, then the config.
inline fs::path resolve_output_dir(const ExperimentConfig& cfg, const std::string& cli_out = "") {
  if (!cli_out.empty()) return cli_out;
  if (const char* env = std::getenv("INEWTON_OUT_DIR"); env != nullptr && *env != '\0') return env;
  return cfg.output_dir;
}

inline std::string to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.case_name << ',' << r.strategy << ',' << r.inner << ',' << r.outer << ',' << r.cuts << ',' << r.ms
       << '\n';
  }
  return os.str();
}

/// Runs every (problem, strategy) pair in order and writes sweep.csv plus one
/// JSON trace per run into `out_dir`.
inline SweepResult run_sweep(const ExperimentConfig& cfg, const fs::path& out_dir) {
  SweepResult res;
  for (const auto& spec : cfg.problems) {
    const RunSettings settings = settings_for(cfg, spec);
    for (const auto& strategy : cfg.strategies) {
      RunOutcome run = run_case(spec, strategy, settings, cfg.seed, cfg.timing);
      const fs::path trace_path = out_dir / ("trace_" + slug(spec.case_name) + "__" + slug(strategy.label) + ".json");
      write_atomic(trace_path, run.trace.dump(1) + "\n");
      res.trace_paths.push_back(trace_path);
      res.rows.push_back(
          {spec.case_name, strategy.label, run.inner, run.outer, run.cuts, run.ms, run.completed, run.status});
    }
  }
  res.csv_path = out_dir / "sweep.csv";
  write_atomic(res.csv_path, to_csv(res.rows));
  return res;
}

}  // namespace inewton::harness
