#pragma once

#include <string>
#include <vector>

#include "inewton/harness/config.hpp"
#include "inewton/harness/runs.hpp"

namespace inewton::harness {

/// Probe data of one outer iteration.
struct OuterTrace {
  int nu = 0;
  double eta = 0.0;
  double res_norm = 0.0;
  std::vector<double> linear_rel_residual;
  std::vector<double> nonlinear_res_norm;
};

struct OversolvingTrace {
  std::string case_name;
  std::string strategy;
  int step = 0;
  /// Time step size, 0 for steady problems.
  double dt = 0.0;
  bool converged = false;
  std::vector<OuterTrace> outer;
};

inline OversolvingTrace collect_trace(const NewtonReport& rep) {
  OversolvingTrace tr;
  tr.converged = rep.converged;
  for (const auto& it : rep.iterations) {
    OuterTrace o;
    o.nu = it.nu;
    o.eta = it.eta_used;
    o.res_norm = it.res_norm;
    if (it.oversolving_trace) {
      for (const auto& s : *it.oversolving_trace) {
        o.linear_rel_residual.push_back(s.linear_rel_residual);
        o.nonlinear_res_norm.push_back(s.nonlinear_res_norm);
      }
    }
    tr.outer.push_back(std::move(o));
  }
  return tr;
}

/// Runs the Newton solve of step `step_index` with the oversolving probe on.
/// Steady problems have the single step 0; for the transient problem the
/// index counts accepted time steps from 0.
[[nodiscard]] inline OversolvingTrace emit_oversolving_trace(const ProblemSpec& spec, const StrategyKind& strategy,
                                                             int step_index, RunSettings settings,
                                                             std::uint64_t seed = 1) {
  if (step_index < 0) throw ConfigError("trace: step must be non-negative");
  settings.newton.probe_oversolving = true;
  OversolvingTrace tr;
  if (!spec.transient()) {
    if (step_index != 0) throw ConfigError("trace: steady problem '" + spec.name + "' only has step 0");
    const NonlinearProblem problem = build_steady_problem(spec, seed);
    tr = collect_trace(solve(problem, problem.initial_guess, strategy, settings.forcing, settings.newton,
                             settings.krylov));
  } else {
    const TransientReport rep = run_transient(twophase_params(spec), settings.transient, strategy,
                                              settings.forcing, settings.newton, settings.krylov);
    int seen = 0;
    const StepRecord* hit = nullptr;
    for (const auto& s : rep.per_step) {
      if (!s.accepted) continue;
      if (seen++ == step_index) {
        hit = &s;
        break;
      }
    }
    if (hit == nullptr) {
      throw ConfigError("trace: step " + std::to_string(step_index) + " out of range (" +
                        std::to_string(rep.steps_accepted) + " accepted steps)");
    }
    tr = collect_trace(hit->newton);
    tr.dt = hit->dt;
  }
  tr.case_name = spec.case_name;
  tr.strategy = strategy.label;
  tr.step = step_index;
  return tr;
}

inline json to_json(const OversolvingTrace& tr) {
  json outer = json::array();
  for (const auto& o : tr.outer) {
    outer.push_back(json{{"nu", o.nu},
                         {"eta", o.eta},
                         {"res_norm", o.res_norm},
                         {"linear_rel_residual", o.linear_rel_residual},
                         {"nonlinear_res_norm", o.nonlinear_res_norm}});
  }
  return json{{"case", tr.case_name}, {"strategy", tr.strategy}, {"step", tr.step},
              {"dt", tr.dt},          {"converged", tr.converged}, {"outer", std::move(outer)}};
}

/// Writes one trace file per (problem, strategy) and returns the paths.
inline std::vector<fs::path> write_traces(const ExperimentConfig& cfg, int step_index, const fs::path& out_dir) {
  std::vector<fs::path> paths;
  for (const auto& spec : cfg.problems) {
    const RunSettings settings = settings_for(cfg, spec);
    for (const auto& strategy : cfg.strategies) {
      const OversolvingTrace tr = emit_oversolving_trace(spec, strategy, step_index, settings, cfg.seed);
      const fs::path p = out_dir / ("oversolve_" + slug(spec.case_name) + "__" + slug(strategy.label) + "_step" +
                                    std::to_string(step_index) + ".json");
      write_atomic(p, to_json(tr).dump(1) + "\n");
      paths.push_back(p);
    }
  }
  return paths;
}

}  // namespace inewton::harness
