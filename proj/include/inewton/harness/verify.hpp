#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "inewton/forcing/rules.hpp"
#include "inewton/forcing/schedules.hpp"
#include "inewton/harness/runs.hpp"
#include "inewton/verification/constructed_maps.hpp"
#include "inewton/verification/lemma1.hpp"
#include "inewton/verification/order.hpp"
#include "inewton/verification/scale.hpp"

namespace inewton::harness {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// e_{k+1} = e_k^q (q > 1) or e_{k+1} = e_k / 10 (q = 1), starting at e0.
inline std::vector<double> synthetic_errors(double q, int count, double e0 = 0.5) {
  std::vector<double> e{e0};
  for (int k = 1; k < count; ++k) e.push_back(q == 1.0 ? e.back() / 10.0 : std::pow(e.back(), q));
  return e;
}

/// A random but consistent forcing history at outer iteration nu.
inline ForcingInputs random_history(std::mt19937_64& rng, int nu) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  PreviousStep p;
  p.res_norm = 0.5 + 10.0 * unif(rng);
  p.eta = 0.01 + 0.8 * unif(rng);
  p.linear_model_residual_norm = p.eta * p.res_norm * (0.2 + 0.8 * unif(rng));
  const double res = p.res_norm * (0.01 + 0.9 * unif(rng));
  p.disagreement_norm = res * (0.05 + 0.9 * unif(rng));
  p.actual_reduction = p.res_norm - res;
  p.predicted_reduction = p.res_norm - p.linear_model_residual_norm;
  p.residual_change_norm = p.actual_reduction * (1.0 + unif(rng));
  ForcingInputs in;
  in.nu = nu;
  in.res_norm_current = res;
  in.prev = p;
  return in;
}

inline std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

/// Built-in numerical self-checks of the library.
[[nodiscard]] inline std::vector<CheckResult> run_verification(std::uint64_t seed = 20240611) {
  std::vector<CheckResult> out;
  constexpr int samples = 1000;

  // Holder remainder bound on maps whose constants are known.
  const NonlinearProblem affine = affine_problem(12, seed);
  for (const HolderConstants hc : {HolderConstants{0.0, 1.0}, HolderConstants{1.0, 1.0}, HolderConstants{3.0, 0.5}}) {
    const Lemma1Result r = check_lemma1(affine, hc, samples, seed);
    out.push_back({"lemma1_affine_C" + fmt("%g", hc.C) + "_alpha" + fmt("%g", hc.alpha), r.holds,
                   std::to_string(r.violations) + " violations / " + std::to_string(r.samples)});
  }
  const verification::ConstructedMap quad = verification::quadratic_map(6, seed);
  {
    const Lemma1Result r = check_lemma1(quad.problem, quad.holder, samples, seed);
    out.push_back({"lemma1_quadratic", r.holds,
                   std::to_string(r.violations) + " violations, worst lhs/rhs " + fmt("%.3g", r.worst_ratio)});
  }
  {
    const HolderConstants small{quad.holder.C * 1e-2, quad.holder.alpha};
    const Lemma1Result r = check_lemma1(quad.problem, small, samples, seed);
    out.push_back({"lemma1_quadratic_undersized_C_detected", !r.holds,
                   std::to_string(r.violations) + " violations expected > 0"});
  }
  {
    const verification::ConstructedMap sq = verification::scalar_square();
    const Lemma1Result r = check_lemma1(sq.problem, sq.holder, samples, seed);
    out.push_back({"lemma1_scalar_square", r.holds, std::to_string(r.violations) + " violations"});
  }

  // Order estimator on sequences of known order.
  for (double q : {1.0, 1.3, 1.618, 2.0}) {
    const OrderEstimate est = estimate_order(synthetic_errors(q, 6), 4);
    out.push_back({"order_synthetic_q" + fmt("%g", q), std::abs(est.order - q) <= 0.01,
                   "estimate " + fmt("%.6f", est.order)});
  }

  // Scale independence over random histories.
  const ForcingConfig fcfg;
  std::vector<StrategyKind> scale_free{StrategyKind::of(ForcingRule::ew1), StrategyKind::of(ForcingRule::ew2),
                                       StrategyKind::of(ForcingRule::botti)};
  for (Schedule s : {Schedule::steep, Schedule::exp, Schedule::cub}) {
    scale_free.push_back(StrategyKind::of(ForcingRule::new_choice1, s));
    scale_free.push_back(StrategyKind::of(ForcingRule::new_choice2, s));
  }
  std::mt19937_64 rng(seed);
  for (const auto& kind : scale_free) {
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const ScaleCheckResult r = check_scale_independence(kind, fcfg, random_history(rng, 1 + trial % 8));
      worst = std::max(worst, r.max_rel_deviation);
    }
    out.push_back({"scale_independence_" + kind.label, worst <= 1e-14, "max deviation " + fmt("%.3g", worst)});
  }

  // Schedule shape over nu = 1..100.
  for (Schedule s : {Schedule::steep, Schedule::exp, Schedule::cub}) {
    bool ok = true;
    for (int nu = 1; nu <= 100; ++nu) {
      const double p = p_schedule(s, nu);
      const double phi = phi_schedule(s, nu, fcfg);
      ok = ok && p >= 1.0 && p <= 2.0 && phi >= fcfg.eps0 && phi <= fcfg.phi0;
      if (nu > 1) ok = ok && p >= p_schedule(s, nu - 1) && phi <= phi_schedule(s, nu - 1, fcfg);
    }
    out.push_back({std::string("schedule_shape_") + schedule_suffix(s), ok, "nu = 1..100"});
  }
  {
    const double p_gap = 2.0 - p_schedule(Schedule::steep, 10);
    const double phi_gap = phi_schedule(Schedule::steep, 10, fcfg) - fcfg.eps0;
    out.push_back({"schedule_steep_limit_by_10", p_gap <= 1e-3 && phi_gap <= 1e-3,
                   "p gap " + fmt("%.3g", p_gap) + ", phi gap " + fmt("%.3g", phi_gap)});
  }
  return out;
}

}  // namespace inewton::harness
