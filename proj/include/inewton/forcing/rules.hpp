#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "inewton/error.hpp"
#include "inewton/forcing/schedules.hpp"
#include "inewton/forcing/strategy.hpp"

namespace inewton {

/// Quantities measured at outer iteration nu - 1, after its step was taken.
struct PreviousStep {
  /// ||R(u^{nu-1})||
  double res_norm = 0.0;
  /// ||R(u^{nu-1}) + R'(u^{nu-1}) d^{nu-1}||
  double linear_model_residual_norm = 0.0;
  /// ||R(u^nu) - R(u^{nu-1}) - R'(u^{nu-1}) d^{nu-1}||
  double disagreement_norm = 0.0;
  /// a_{nu-1} = ||R(u^{nu-1})|| - ||R(u^nu)||
  double actual_reduction = 0.0;
  /// p_{nu-1} = ||R(u^{nu-1})|| - ||R(u^{nu-1}) + R'(u^{nu-1}) d^{nu-1}||
  double predicted_reduction = 0.0;
  /// ||R(u^{nu-1}) - R(u^nu)||
  double residual_change_norm = 0.0;
  /// Forcing term used at nu - 1.
  double eta = 0.0;
};

struct ForcingInputs {
  int nu = 0;
  /// ||R(u^nu)||
  double res_norm_current = 0.0;
  /// Absent at nu = 0.
  std::optional<PreviousStep> prev;

  /// Every norm-valued input multiplied by s. Forcing terms are left alone.
  [[nodiscard]] ForcingInputs scaled(double s) const {
    ForcingInputs out = *this;
    out.res_norm_current *= s;
    if (out.prev) {
      out.prev->res_norm *= s;
      out.prev->linear_model_residual_norm *= s;
      out.prev->disagreement_norm *= s;
      out.prev->actual_reduction *= s;
      out.prev->predicted_reduction *= s;
      out.prev->residual_change_norm *= s;
    }
    return out;
  }
};

[[nodiscard]] inline double clamp_eta(const ForcingConfig& cfg, double eta) {
  if (std::isnan(eta)) return cfg.eta_max;
  return std::clamp(eta, cfg.eps0, cfg.eta_max);
}

/// t = actual / predicted reduction.
[[nodiscard]] inline double trust_ratio(double actual, double predicted) {
  if (predicted == 0.0) throw DegenerateHistory("trust_ratio: predicted reduction is zero");
  return actual / predicted;
}

/// lr / (lr + alpha * ac), lr the linear-model residual norm and ac the norm
/// of the residual change produced by the step.
[[nodiscard]] inline double botti_eta(double linear_model_norm, double actual_change_norm, double alpha) {
  if (linear_model_norm < 0.0 || actual_change_norm < 0.0) {
    throw DegenerateHistory("botti: negative norm");
  }
  if (linear_model_norm == 0.0 && actual_change_norm == 0.0) {
    throw DegenerateHistory("botti: linear-model residual and residual change both zero");
  }
  return linear_model_norm / (linear_model_norm + alpha * actual_change_norm);
}

namespace detail {

inline const PreviousStep& require_history(const ForcingInputs& in, const char* who) {
  if (in.nu < 1 || !in.prev) {
    throw DegenerateHistory(std::string(who) + ": previous-iteration history required (nu >= 1)");
  }
  if (!(in.prev->res_norm > 0.0)) {
    throw DegenerateHistory(std::string(who) + ": previous residual norm is zero");
  }
  return *in.prev;
}

}  // namespace detail

/// (||R(u^nu) - R(u^{nu-1}) - R'(u^{nu-1}) d^{nu-1}|| / ||R(u^{nu-1})||)^p(nu),
/// with the exponent supplied by power(nu). Unclamped.
template <class PowerFn>
[[nodiscard]] double new_choice1_eta(const ForcingInputs& in, PowerFn&& power) {
  const PreviousStep& prev = detail::require_history(in, "choice1");
  const double ratio = prev.disagreement_norm / prev.res_norm;
  return std::pow(ratio, power(in.nu));
}

[[nodiscard]] inline double new_choice1_eta(const ForcingConfig&, const ForcingInputs& in, Schedule s) {
  return new_choice1_eta(in, [s](int nu) { return p_schedule(s, nu); });
}

/// phi(nu) (||R(u^nu)|| / ||R(u^{nu-1})||)^r with the coefficient supplied
/// by phi(nu). Unclamped.
template <class PhiFn>
[[nodiscard]] double new_choice2_eta(const ForcingConfig& cfg, const ForcingInputs& in, PhiFn&& phi) {
  const PreviousStep& prev = detail::require_history(in, "choice2");
  const double ratio = in.res_norm_current / prev.res_norm;
  return phi(in.nu) * std::pow(ratio, cfg.r);
}

[[nodiscard]] inline double new_choice2_eta(const ForcingConfig& cfg, const ForcingInputs& in, Schedule s) {
  return new_choice2_eta(cfg, in, [&cfg, s](int nu) { return phi_schedule(s, nu, cfg); });
}

/// Formula value of the forcing term before clamping and before the
/// optional safeguard. At nu = 0 history-dependent rules return eta0.
[[nodiscard]] inline double raw_eta(const StrategyKind& kind, const ForcingConfig& cfg,
                                    const ForcingInputs& in) {
  if (in.nu < 0) throw Error("forcing: negative iteration index");
  switch (kind.rule) {
    case ForcingRule::fixed: return kind.fixed_value;
    case ForcingRule::brown_saad: return in.nu == 0 ? cfg.eta0 : std::pow(0.5, in.nu);
    default: break;
  }
  if (in.nu == 0) return cfg.eta0;

  switch (kind.rule) {
    case ForcingRule::ew1: return new_choice1_eta(in, [](int) { return 1.0; });
    case ForcingRule::ew2: return new_choice2_eta(cfg, in, [&cfg](int) { return cfg.gamma; });
    case ForcingRule::an_et_al: {
      const PreviousStep& prev = detail::require_history(in, "an");
      const double t = trust_ratio(prev.actual_reduction, prev.predicted_reduction);
      if (t < cfg.an_p1) return 1.0 - 2.0 * cfg.an_p1;
      if (t < cfg.an_p2) return prev.eta;
      if (t < cfg.an_p3) return 0.8 * prev.eta;
      return 0.5 * prev.eta;
    }
    case ForcingRule::botti: {
      const PreviousStep& prev = detail::require_history(in, "botti");
      return botti_eta(prev.linear_model_residual_norm, prev.residual_change_norm, cfg.botti_alpha);
    }
    case ForcingRule::new_choice1: return new_choice1_eta(cfg, in, kind.schedule);
    case ForcingRule::new_choice2: return new_choice2_eta(cfg, in, kind.schedule);
    default: break;
  }
  throw Error("forcing: unhandled rule");
}

/// Forcing term for outer iteration nu.
///
/// Adaptive rules are clamped into [eps0, eta_max]. A fixed strategy returns
/// its value unchanged: it is an explicit user choice and may lie below eps0.
[[nodiscard]] inline double next_eta(const StrategyKind& kind, const ForcingConfig& cfg,
                                     const ForcingInputs& in) {
  double eta = raw_eta(kind, cfg, in);
  if (kind.rule == ForcingRule::fixed) return eta;

  if (cfg.safeguard && in.nu >= 1 && in.prev) {
    const double golden = 0.5 * (1.0 + std::sqrt(5.0));
    const double last = in.prev->eta;
    double floor = 0.0;
    switch (kind.rule) {
      case ForcingRule::ew1:
      case ForcingRule::new_choice1: floor = std::pow(last, golden); break;
      case ForcingRule::ew2: floor = cfg.gamma * std::pow(last, cfg.r); break;
      case ForcingRule::new_choice2:
        floor = phi_schedule(kind.schedule, in.nu, cfg) * std::pow(last, cfg.r);
        break;
      default: break;
    }
    if (floor > 0.1) eta = std::max(eta, floor);
  }
  return clamp_eta(cfg, eta);
}

}  // namespace inewton
