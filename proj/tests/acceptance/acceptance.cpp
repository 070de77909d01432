// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "inewton/inewton.hpp"

using namespace inewton;
using mp = boost::multiprecision::cpp_dec_float_50;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s criterion %2d: %s | %s | %.2f s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// Criterion 1: 50-digit oracle for the forcing formulas.

mp oracle_p(Schedule s, int nu) {
  const mp v = nu;
  mp p;
  switch (s) {
    case Schedule::steep: p = mp(2) - (mp(2.5) / v) * exp(-v); break;
    case Schedule::exp: p = mp(2) - exp(mp(1) - pow(v, mp("0.7"))); break;
    case Schedule::cub: p = v * v * v / 250 + v * v / 250 + v / 250 + 1; break;
  }
  return p < 2 ? p : mp(2);
}

mp oracle_phi(Schedule s, int nu, const ForcingConfig& c) {
  const mp v = nu;
  const mp phi0 = c.phi0;
  mp phi;
  switch (s) {
    case Schedule::steep: phi = phi0 * exp(mp(1) - v); break;
    case Schedule::exp: phi = phi0 * exp(mp(1) - pow(v, mp("0.7"))); break;
    case Schedule::cub: phi = phi0 * (-v * v * v / 250 + v * v / 250 + v / 250 + 1); break;
  }
  // Range [eps0, phi0].
  if (phi > phi0) phi = phi0;
  const mp eps0 = c.eps0;
  return phi > eps0 ? phi : eps0;
}

mp oracle_eta(const StrategyKind& k, const ForcingConfig& c, const ForcingInputs& in) {
  const PreviousStep& p = *in.prev;
  const mp res = in.res_norm_current;
  const mp res_prev = p.res_norm;
  switch (k.rule) {
    case ForcingRule::fixed: return mp(k.fixed_value);
    case ForcingRule::brown_saad: return pow(mp("0.5"), in.nu);
    case ForcingRule::ew1: return mp(p.disagreement_norm) / res_prev;
    case ForcingRule::ew2: return mp(c.gamma) * pow(res / res_prev, mp(c.r));
    case ForcingRule::an_et_al: {
      const mp t = mp(p.actual_reduction) / mp(p.predicted_reduction);
      const mp eta_prev = p.eta;
      if (t < mp(c.an_p1)) return mp(1) - 2 * mp(c.an_p1);
      if (t < mp(c.an_p2)) return eta_prev;
      if (t < mp(c.an_p3)) return mp("0.8") * eta_prev;
      return mp("0.5") * eta_prev;
    }
    case ForcingRule::botti: {
      const mp lr = p.linear_model_residual_norm;
      const mp ac = p.residual_change_norm;
      return lr / (lr + mp(c.botti_alpha) * ac);
    }
    case ForcingRule::new_choice1: return pow(mp(p.disagreement_norm) / res_prev, oracle_p(k.schedule, in.nu));
    case ForcingRule::new_choice2: return oracle_phi(k.schedule, in.nu, c) * pow(res / res_prev, mp(c.r));
  }
  return mp(-1);
}

ForcingInputs random_inputs(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> nu_dist(1, 15);
  PreviousStep p;
  const double scale = std::pow(10.0, -8.0 + 12.0 * u(rng));
  p.res_norm = scale * (0.1 + u(rng));
  p.eta = 0.01 + 0.89 * u(rng);
  p.linear_model_residual_norm = p.eta * p.res_norm * (0.05 + 0.95 * u(rng));
  const double res = p.res_norm * (0.001 + 1.2 * u(rng));
  p.disagreement_norm = p.res_norm * (1e-4 + 0.99 * u(rng));
  p.actual_reduction = p.res_norm - res;
  p.predicted_reduction = p.res_norm - p.linear_model_residual_norm;
  p.residual_change_norm = std::abs(p.actual_reduction) + scale * u(rng);
  ForcingInputs in;
  in.nu = nu_dist(rng);
  in.res_norm_current = res;
  in.prev = p;
  return in;
}

Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1618);
  const ForcingConfig cfg;
  std::vector<StrategyKind> kinds{StrategyKind::fixed(3.7e-5), StrategyKind::of(ForcingRule::brown_saad),
                                  StrategyKind::of(ForcingRule::ew1),        StrategyKind::of(ForcingRule::ew2),
                                  StrategyKind::of(ForcingRule::an_et_al),   StrategyKind::of(ForcingRule::botti)};
  for (Schedule s : {Schedule::steep, Schedule::exp, Schedule::cub}) {
    kinds.push_back(StrategyKind::of(ForcingRule::new_choice1, s));
    kinds.push_back(StrategyKind::of(ForcingRule::new_choice2, s));
  }
  double worst = 0.0;
  std::string worst_at;
  int evaluations = 0;
  for (int h = 0; h < 50; ++h) {
    const ForcingInputs in = random_inputs(rng);
    for (const auto& k : kinds) {
      const mp exact = oracle_eta(k, cfg, in);
      const double got = raw_eta(k, cfg, in);
      const double rel = static_cast<double>(abs((mp(got) - exact) / exact));
      ++evaluations;
      if (rel > worst) {
        worst = rel;
        worst_at = k.label + " nu=" + std::to_string(in.nu);
      }
    }
  }
  // Also schedule values on their own, nu = 1..100.
  for (Schedule s : {Schedule::steep, Schedule::exp, Schedule::cub}) {
    for (int nu = 1; nu <= 100; ++nu) {
      const double rp = static_cast<double>(abs((mp(p_schedule(s, nu)) - oracle_p(s, nu)) / oracle_p(s, nu)));
      const mp phi = oracle_phi(s, nu, cfg);
      const double rf = static_cast<double>(abs((mp(phi_schedule(s, nu, cfg)) - phi) / phi));
      worst = std::max({worst, rp, rf});
      evaluations += 2;
    }
  }
  const double secs = elapsed_since(t0);
  return {worst <= 1e-12 && secs < 1.0, fmt("max rel err %.2e", worst) + " (worst " + worst_at + ") over " +
                                            std::to_string(evaluations) + " evaluations, limit 1e-12, " +
                                            fmt("%.3f s < 1 s", secs)};
}

// ---------------------------------------------------------------------------
// Shared scenarios.

KrylovConfig krylov(Preconditioner p) {
  KrylovConfig k;
  k.preconditioner = p;
  return k;
}

struct TransientScenario {
  problems::TwoPhaseParams prm;
  TransientConfig tcfg;
  NewtonConfig ncfg;
  KrylovConfig kcfg = krylov(Preconditioner::none);

  TransientScenario() {
    prm.cells = 100;
    tcfg.t_end = 1.0;
    tcfg.dt_init = 0.02;
    tcfg.dt_max = 0.02;
    ncfg.rtol = 1e-4;
    ncfg.atol = 1e-12;
    ncfg.max_outer = 30;
  }
};

std::vector<StrategyKind> all_strategies() {
  std::vector<StrategyKind> out{StrategyKind::fixed(1e-6), StrategyKind::fixed(1e-2),
                                StrategyKind::of(ForcingRule::brown_saad), StrategyKind::of(ForcingRule::ew1),
                                StrategyKind::of(ForcingRule::ew2), StrategyKind::of(ForcingRule::an_et_al),
                                StrategyKind::of(ForcingRule::botti)};
  for (Schedule s : {Schedule::steep, Schedule::exp, Schedule::cub}) {
    out.push_back(StrategyKind::of(ForcingRule::new_choice1, s));
    out.push_back(StrategyKind::of(ForcingRule::new_choice2, s));
  }
  return out;
}

struct ConditionTally {
  int runs = 0;
  int iterations = 0;
  int violations = 0;
  double worst = 0.0;

  void add(const NewtonReport& rep, const NewtonConfig& ncfg) {
    if (!rep.converged) return;
    ++runs;
    for (const auto& it : rep.iterations) {
      ++iterations;
      const double bound = it.eta_used * it.res_norm * (1.0 + 1e-8) + ncfg.atol;
      worst = std::max(worst, it.linear_model_residual_norm / bound);
      if (!it.inner_converged || it.linear_model_residual_norm > bound) ++violations;
    }
  }
};

Outcome criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  ConditionTally tally;
  struct Steady {
    NonlinearProblem p;
    Preconditioner pc;
  };
  const std::vector<Steady> steady{{problems::bratu2d(16, 2.0), Preconditioner::ilu0},
                                   {problems::bratu2d(16, 5.0), Preconditioner::ilu0},
                                   {problems::bratu2d(16, 5.0), Preconditioner::none},
                                   {problems::chandrasekhar_h(100, 0.5), Preconditioner::none},
                                   {problems::chandrasekhar_h(100, 0.9), Preconditioner::none}};
  NewtonConfig ncfg;
  ncfg.rtol = 1e-10;
  for (const auto& s : steady) {
    for (const auto& k : all_strategies()) {
      tally.add(solve(s.p, s.p.initial_guess, k, {}, ncfg, krylov(s.pc)), ncfg);
    }
  }
  const TransientScenario ts;
  for (const auto& k : all_strategies()) {
    const TransientReport rep = run_transient(ts.prm, ts.tcfg, k, {}, ts.ncfg, ts.kcfg);
    for (const auto& step : rep.per_step) tally.add(step.newton, ts.ncfg);
  }
  const double secs = elapsed_since(t0);
  return {tally.violations == 0 && tally.runs > 0 && secs < 30.0,
          std::to_string(tally.violations) + " violations over " + std::to_string(tally.iterations) +
              " outer iterations in " + std::to_string(tally.runs) + " converged solves, " +
              fmt("max ||R+R'd||/bound %.3f", tally.worst) + fmt(", %.1f s < 30 s", secs)};
}

Outcome order_check(const NonlinearProblem& p, const StrategyKind& k, const ForcingConfig& fcfg,
                    const NewtonConfig& ncfg, Preconditioner pc, double threshold) {
  const NewtonReport rep = solve(p, p.initial_guess, k, fcfg, ncfg, krylov(pc));
  if (!rep.converged) return {false, k.label + " did not converge: " + rep.message};
  const OrderEstimate est = estimate_order(rep.residual_history, 4);
  std::string tail;
  for (double e : est.errors_used) tail += fmt(" %.2e", e);
  return {est.order >= threshold,
          k.label + fmt(" order %.3f", est.order) + fmt(" >= %.1f", threshold) + " (residuals" + tail + ")"};
}

Outcome criterion3() {
  NewtonConfig ncfg;
  ncfg.rtol = 1e-10;
  return order_check(problems::bratu2d(16, 2.0), StrategyKind::fixed(1e-12), {}, ncfg, Preconditioner::ilu0, 1.8);
}

NewtonConfig heq_newton() {
  NewtonConfig n;
  n.rtol = 1e-13;
  n.atol = 1e-15;
  return n;
}

Outcome criterion4() {
  const NonlinearProblem p = problems::chandrasekhar_h(100, 0.9);
  const Outcome a = order_check(p, StrategyKind::of(ForcingRule::ew1), {}, heq_newton(), Preconditioner::none, 1.3);
  const Outcome b = order_check(p, StrategyKind::of(ForcingRule::new_choice1, Schedule::steep), {}, heq_newton(),
                                Preconditioner::none, 1.6);
  return {a.pass && b.pass, a.detail + "; " + b.detail};
}

Outcome criterion5() {
  ForcingConfig f;
  f.r = 1.618;
  return order_check(problems::chandrasekhar_h(100, 0.5), StrategyKind::of(ForcingRule::new_choice2, Schedule::steep),
                     f, heq_newton(), Preconditioner::none, 1.4);
}

Outcome criterion6() {
  const auto t0 = std::chrono::steady_clock::now();
  const TransientScenario ts;
  const TransientReport fixed = run_transient(ts.prm, ts.tcfg, StrategyKind::fixed(1e-6), {}, ts.ncfg, ts.kcfg);
  const TransientReport inex = run_transient(ts.prm, ts.tcfg, StrategyKind::of(ForcingRule::new_choice2), {},
                                             ts.ncfg, ts.kcfg);
  const double secs = elapsed_since(t0);
  const double in_ratio = static_cast<double>(inex.cumulative_inner) / fixed.cumulative_inner;
  const double out_ratio = static_cast<double>(inex.cumulative_outer) / fixed.cumulative_outer;
  const bool steps_ok = fixed.completed && inex.completed && fixed.steps_accepted == 50 && inex.steps_accepted == 50;
  return {steps_ok && in_ratio <= 0.7 && out_ratio <= 1.5 && secs < 60.0,
          "accepted steps " + std::to_string(fixed.steps_accepted) + "/" + std::to_string(inex.steps_accepted) +
              ", inner " + std::to_string(inex.cumulative_inner) + "/" + std::to_string(fixed.cumulative_inner) +
              fmt(" = %.3f <= 0.7", in_ratio) + ", outer " + std::to_string(inex.cumulative_outer) + "/" +
              std::to_string(fixed.cumulative_outer) + fmt(" = %.3f <= 1.5", out_ratio) +
              fmt(", %.1f s < 60 s", secs)};
}

Outcome criterion7() {
  const TransientScenario ts;
  const TransientReport ref = run_transient(ts.prm, ts.tcfg, StrategyKind::fixed(1e-6), {}, ts.ncfg, ts.kcfg);
  const std::vector<double> steps = accepted_step_sizes(ref);
  std::vector<int> inner;
  std::string detail = std::to_string(steps.size()) + " frozen steps; inner";
  bool ok = ref.completed;
  for (double eta : {1e-6, 1e-4, 1e-3, 1e-2}) {
    const TransientReport r = run_frozen(ts.prm, steps, ts.tcfg, StrategyKind::fixed(eta), {}, ts.ncfg, ts.kcfg);
    ok = ok && r.completed;
    if (!inner.empty()) ok = ok && r.cumulative_inner <= inner.back();
    inner.push_back(r.cumulative_inner);
    detail += fmt(" eta=%.0e:", eta) + std::to_string(r.cumulative_inner) + " (cuts " + std::to_string(r.cuts) + ")";
  }
  return {ok, detail};
}

Outcome criterion8() {
  const std::size_t n = 40;
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < n; ++i) {
    t.push_back({i, i, 2.5});
    if (i > 0) t.push_back({i, i - 1, -1.0});
    if (i + 1 < n) t.push_back({i, i + 1, -0.7});
  }
  const CsrMatrix a = CsrMatrix::from_triplets(n, n, t);
  DenseVector root(n);
  for (std::size_t i = 0; i < n; ++i) root[i] = std::sin(0.3 * static_cast<double>(i));
  const NonlinearProblem p = verification::linear_system_map(a, root).problem;
  NewtonConfig ncfg;
  ncfg.probe_oversolving = true;
  const NewtonReport rep = solve(p, p.initial_guess, StrategyKind::fixed(1e-12), {}, ncfg, krylov(Preconditioner::none));
  double worst = 0.0;
  std::size_t samples = 0;
  for (const auto& it : rep.iterations) {
    if (!it.oversolving_trace) continue;
    for (const auto& s : *it.oversolving_trace) {
      const double linear = s.linear_rel_residual * it.res_norm;
      worst = std::max(worst, std::abs(s.nonlinear_res_norm - linear) / linear);
      ++samples;
    }
  }
  return {samples > 0 && worst <= 1e-10,
          fmt("max rel |nonlinear - linear| %.2e <= 1e-10", worst) + " over " + std::to_string(samples) +
              " inner iterates"};
}

Outcome criterion9() {
  std::vector<Triplet> t;
  const std::size_t n = 10;
  for (std::size_t i = 0; i < n; ++i) {
    t.push_back({i, i, 3.0});
    if (i + 1 < n) t.push_back({i, i + 1, 1.0});
    if (i > 1) t.push_back({i, i - 2, -0.5});
  }
  DenseVector root(n);
  for (std::size_t i = 0; i < n; ++i) root[i] = 1.0 + 0.1 * static_cast<double>(i);
  const auto affine = verification::affine_map(CsrMatrix::from_triplets(n, n, t), root);
  const auto quad = verification::quadratic_map(8, 2024);
  const Lemma1Result ra = check_lemma1(affine.problem, affine.holder, 1000);
  const Lemma1Result ra2 = check_lemma1(affine.problem, HolderConstants{2.0, 0.5}, 1000);
  const Lemma1Result rq = check_lemma1(quad.problem, quad.holder, 1000);
  return {ra.violations == 0 && ra2.violations == 0 && rq.violations == 0,
          "affine (C=0): " + std::to_string(ra.violations) + "/" + std::to_string(ra.samples) +
              ", affine (C=2, alpha=0.5): " + std::to_string(ra2.violations) + "/" + std::to_string(ra2.samples) +
              ", quadratic (C=" + fmt("%.3g", quad.holder.C) + "): " + std::to_string(rq.violations) + "/" +
              std::to_string(rq.samples) + fmt(" violations, worst lhs/rhs %.3f", rq.worst_ratio)};
}

Outcome criterion10() {
  std::mt19937_64 rng(99);
  const ForcingConfig cfg;
  std::vector<StrategyKind> kinds{StrategyKind::of(ForcingRule::ew1), StrategyKind::of(ForcingRule::ew2),
                                  StrategyKind::of(ForcingRule::botti)};
  for (Schedule s : {Schedule::steep, Schedule::exp, Schedule::cub}) {
    kinds.push_back(StrategyKind::of(ForcingRule::new_choice1, s));
    kinds.push_back(StrategyKind::of(ForcingRule::new_choice2, s));
  }
  double worst = 0.0;
  int checks = 0;
  for (int h = 0; h < 200; ++h) {
    const ForcingInputs in = random_inputs(rng);
    for (const auto& k : kinds) {
      worst = std::max(worst, check_scale_independence(k, cfg, in).max_rel_deviation);
      ++checks;
    }
  }
  return {worst <= 1e-14, fmt("max rel deviation %.2e <= 1e-14", worst) + " over " + std::to_string(checks) +
                              " (strategy, history) pairs at scales 1e-6, 1, 1e6"};
}

Outcome criterion11() {
  const ForcingConfig cfg;
  bool ok = true;
  std::string detail;
  for (Schedule s : {Schedule::steep, Schedule::exp, Schedule::cub}) {
    for (int nu = 1; nu <= 100; ++nu) {
      const double p = p_schedule(s, nu);
      const double phi = phi_schedule(s, nu, cfg);
      ok = ok && p >= 1.0 && p <= 2.0 && phi >= cfg.eps0 && phi <= cfg.phi0;
      if (nu > 1) ok = ok && p >= p_schedule(s, nu - 1) && phi <= phi_schedule(s, nu - 1, cfg);
    }
  }
  const double p_gap = 2.0 - p_schedule(Schedule::steep, 10);
  const double phi_gap = phi_schedule(Schedule::steep, 10, cfg) - cfg.eps0;
  ok = ok && p_gap <= 1e-3 && phi_gap <= 1e-3;
  detail = "monotone and bounded for steep/exp/cub over nu=1..100; steep at nu=10: p gap " + fmt("%.2e", p_gap) +
           ", phi gap " + fmt("%.2e", phi_gap) + " (<= 1e-3)";
  return {ok, detail};
}

}  // namespace

int main() {
  report(1, "formula fidelity vs 50-digit oracle", criterion1);
  report(2, "inexact Newton condition on every converged solve", criterion2);
  report(3, "quadratic order, Bratu 16x16 lambda=2 fixed:1e-12", criterion3);
  report(4, "superlinear order, H-equation c=0.9 ew1 / inex1steep", criterion4);
  report(5, "order r for inex2steep, H-equation c=0.5", criterion5);
  report(6, "oversolving reduction, twophase1d 100 cells 50 steps", criterion6);
  report(7, "fixed-eta monotonicity on frozen steps", criterion7);
  report(8, "affine oversolving-probe identity", criterion8);
  report(9, "Holder remainder bound, 1000 samples", criterion9);
  report(10, "scale independence", criterion10);
  report(11, "schedule shape", criterion11);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
