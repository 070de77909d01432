#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "inewton/error.hpp"
#include "inewton/newton/solver.hpp"
#include "inewton/problems/twophase1d.hpp"

namespace inewton {

struct TransientConfig {
  double t_end = 1.0;
  double dt_init = 0.02;
  double dt_min = 1e-6;
  double dt_max = 0.02;
  double cut_factor = 0.5;
  double growth_factor = 1.5;

  void validate() const {
    if (!(t_end > 0.0)) throw ConfigError("transient.t_end must be positive");
    if (!(dt_min > 0.0 && dt_min <= dt_init && dt_init <= dt_max)) {
      throw ConfigError("transient: need 0 < dt_min <= dt_init <= dt_max");
    }
    if (!(cut_factor > 0.0 && cut_factor < 1.0)) throw ConfigError("transient.cut_factor must lie in (0,1)");
    if (!(growth_factor > 1.0)) throw ConfigError("transient.growth_factor must exceed 1");
  }
};

/// One attempted time step.
struct StepRecord {
  double t = 0.0;  ///< time at the start of the step
  double dt = 0.0;
  bool accepted = false;
  int outer = 0;
  int inner = 0;
  NewtonReport newton;
};

struct TransientReport {
  bool completed = false;
  std::string failure;
  int steps_attempted = 0;
  int steps_accepted = 0;
  int cuts = 0;
  /// All outer iterations, failed attempts included.
  int cumulative_outer = 0;
  int cumulative_inner = 0;
  /// Counters restricted to accepted steps.
  int accepted_outer = 0;
  int accepted_inner = 0;
  double t_final = 0.0;
  std::vector<StepRecord> per_step;
  DenseVector final_state;
};

namespace detail {

inline void record_attempt(TransientReport& rep, StepRecord step) {
  ++rep.steps_attempted;
  rep.cumulative_outer += step.outer;
  rep.cumulative_inner += step.inner;
  if (step.accepted) {
    ++rep.steps_accepted;
    rep.accepted_outer += step.outer;
    rep.accepted_inner += step.inner;
  } else {
    ++rep.cuts;
  }
  rep.per_step.push_back(std::move(step));
}

inline StepRecord attempt_step(const problems::TwoPhaseParams& prm, const DenseVector& state, double t,
                               double dt, const StrategyKind& strategy, const ForcingConfig& fcfg,
                               const NewtonConfig& ncfg, const KrylovConfig& kcfg) {
  const NonlinearProblem step = problems::twophase1d(prm, dt, state);
  StepRecord rec;
  rec.t = t;
  rec.dt = dt;
  rec.newton = solve(step, state, strategy, fcfg, ncfg, kcfg);
  rec.accepted = rec.newton.converged;
  rec.outer = rec.newton.total_outer;
  rec.inner = rec.newton.total_inner;
  return rec;
}

/// Converged saturations are pulled back into [0,1] before they become the
/// old state of the next step.
inline DenseVector accepted_state(const DenseVector& s) {
  DenseVector out = s;
  for (double& v : out) v = std::clamp(v, 0.0, 1.0);
  return out;
}

}  // namespace detail

/// Marches the two-phase problem to t_end. A failed Newton solve cuts dt by
/// cut_factor and retries from the same old state; a converged one grows dt
/// by growth_factor up to dt_max. Stops with completed = false when dt would
/// fall below dt_min.
[[nodiscard]] inline TransientReport run_transient(const problems::TwoPhaseParams& prm,
                                                   const TransientConfig& cfg,
                                                   const StrategyKind& strategy,
                                                   const ForcingConfig& fcfg, const NewtonConfig& ncfg,
                                                   const KrylovConfig& kcfg) {
  prm.validate();
  cfg.validate();
  TransientReport rep;
  DenseVector state(static_cast<std::size_t>(prm.cells), prm.initial_saturation);
  double t = 0.0;
  double dt = cfg.dt_init;
  const double t_eps = 1e-12 * cfg.t_end;
  while (cfg.t_end - t > t_eps) {
    const double step_dt = std::min(dt, cfg.t_end - t);
    StepRecord rec = detail::attempt_step(prm, state, t, step_dt, strategy, fcfg, ncfg, kcfg);
    const bool ok = rec.accepted;
    DenseVector next = ok ? detail::accepted_state(rec.newton.solution) : DenseVector{};
    detail::record_attempt(rep, std::move(rec));
    if (ok) {
      state = std::move(next);
      t += step_dt;
      dt = std::min(dt * cfg.growth_factor, cfg.dt_max);
    } else {
      dt = step_dt * cfg.cut_factor;
      if (dt < cfg.dt_min) {
        rep.failure = "time step fell below dt_min at t=" + std::to_string(t);
        break;
      }
    }
  }
  rep.completed = rep.failure.empty();
  rep.t_final = t;
  rep.final_state = state;
  return rep;
}

/// Replays a prescribed sequence of accepted step sizes. A failing step is
/// subdivided by cut_factor until the prescribed interval is covered, so
/// every strategy integrates over the same accepted time levels.
[[nodiscard]] inline TransientReport run_frozen(const problems::TwoPhaseParams& prm,
                                                const std::vector<double>& step_sizes,
                                                const TransientConfig& cfg,
                                                const StrategyKind& strategy,
                                                const ForcingConfig& fcfg, const NewtonConfig& ncfg,
                                                const KrylovConfig& kcfg) {
  prm.validate();
  cfg.validate();
  TransientReport rep;
  DenseVector state(static_cast<std::size_t>(prm.cells), prm.initial_saturation);
  double t = 0.0;
  for (double target_dt : step_sizes) {
    // An uncut step uses target_dt bit for bit, so the replay matches the run it came from.
    double remaining = target_dt;
    double dt = target_dt;
    double t_sub = t;
    while (remaining > 1e-12 * target_dt) {
      const double step_dt = std::min(dt, remaining);
      StepRecord rec = detail::attempt_step(prm, state, t_sub, step_dt, strategy, fcfg, ncfg, kcfg);
      const bool ok = rec.accepted;
      DenseVector next = ok ? detail::accepted_state(rec.newton.solution) : DenseVector{};
      detail::record_attempt(rep, std::move(rec));
      if (ok) {
        state = std::move(next);
        t_sub += step_dt;
        remaining -= step_dt;
      } else {
        dt = step_dt * cfg.cut_factor;
        if (dt < cfg.dt_min) {
          rep.failure = "time step fell below dt_min at t=" + std::to_string(t_sub);
          rep.t_final = t_sub;
          rep.final_state = state;
          return rep;
        }
      }
    }
    t += target_dt;
  }
  rep.completed = true;
  rep.t_final = t;
  rep.final_state = state;
  return rep;
}

/// Accepted step sizes of a transient run, in order.
[[nodiscard]] inline std::vector<double> accepted_step_sizes(const TransientReport& rep) {
  std::vector<double> out;
  for (const auto& s : rep.per_step) {
    if (s.accepted) out.push_back(s.dt);
  }
  return out;
}

}  // namespace inewton
