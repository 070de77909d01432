#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "inewton/error.hpp"
#include "inewton/forcing/rules.hpp"
#include "inewton/krylov/gmres.hpp"
#include "inewton/linalg/ilu0.hpp"
#include "inewton/newton/problem.hpp"

namespace inewton {

struct NewtonConfig {
  /// Converged when ||R(u)|| <= max(rtol ||R(u^0)||, atol).
  double rtol = 1e-8;
  double atol = 1e-14;
  int max_outer = 30;
  /// Record the nonlinear residual at every inner iterate.
  bool probe_oversolving = false;

  void validate() const {
    if (!(rtol > 0.0 && rtol < 1.0)) throw ConfigError("newton.rtol must lie in (0,1)");
    if (!(atol >= 0.0)) throw ConfigError("newton.atol must be non-negative");
    if (max_outer <= 0) throw ConfigError("newton.max_outer must be positive");
  }
};

/// One (linear, nonlinear) sample of the oversolving probe.
struct OversolvingSample {
  /// ||b - A d_j|| / ||b||
  double linear_rel_residual = 0.0;
  /// ||R(u + d_j)||
  double nonlinear_res_norm = 0.0;
};

struct OuterIterRecord {
  int nu = 0;
  double res_norm = 0.0;
  double eta_used = 0.0;
  int inner_iterations = 0;
  bool inner_converged = false;
  /// ||R(u^nu) + R'(u^nu) d^nu||, recomputed after the inner solve.
  double linear_model_residual_norm = 0.0;
  /// The following are known only once R(u^{nu+1}) has been evaluated.
  std::optional<double> disagreement_norm;
  std::optional<double> actual_reduction;
  double predicted_reduction = 0.0;
  std::optional<double> residual_change_norm;
  std::optional<std::vector<OversolvingSample>> oversolving_trace;
};

enum class NewtonStatus { converged, max_outer_reached, nonfinite_residual, inner_solver_failed };

inline std::string to_string(NewtonStatus s) {
  switch (s) {
    case NewtonStatus::converged: return "converged";
    case NewtonStatus::max_outer_reached: return "max_outer_reached";
    case NewtonStatus::nonfinite_residual: return "nonfinite_residual";
    case NewtonStatus::inner_solver_failed: return "inner_solver_failed";
  }
  return "?";
}

struct NewtonReport {
  bool converged = false;
  NewtonStatus status = NewtonStatus::max_outer_reached;
  std::string message;
  std::vector<OuterIterRecord> iterations;
  int total_inner = 0;
  int total_outer = 0;
  double initial_res_norm = 0.0;
  double final_res_norm = 0.0;
  /// ||R(u^0)||, ||R(u^1)||, ..., one entry per evaluated iterate.
  std::vector<double> residual_history;
  /// Iterates rejected by the problem's admissibility test.
  int nonphysical_iterates = 0;
  DenseVector solution;
};

/// Inner solve of A d = b to relative tolerance eta, recording for every
/// inner iterate d_j the true linear residual and ||R(u + d_j)||.
[[nodiscard]] inline std::vector<OversolvingSample> oversolve_probe(
    const NonlinearProblem& problem, const DenseVector& u, const CsrMatrix& a, const DenseVector& b,
    double eta, const Ilu0Factors* precond, const KrylovConfig& kcfg,
    KrylovResult* result_out = nullptr) {
  std::vector<OversolvingSample> samples;
  const double bnorm = norm2(b);
  DenseVector ad(b.size());
  auto observe = [&](int, const DenseVector& d) {
    a.multiply(d, ad);
    for (std::size_t i = 0; i < ad.size(); ++i) ad[i] = b[i] - ad[i];
    samples.push_back({norm2(ad) / bnorm, norm2(problem.residual(u + d))});
  };
  KrylovResult res = gmres_solve(a, b, eta, precond, kcfg, observe);
  if (result_out != nullptr) *result_out = std::move(res);
  return samples;
}

/// Inexact Newton iteration u^{nu+1} = u^nu + d^nu with
/// ||R(u^nu) + R'(u^nu) d^nu|| <= eta_nu ||R(u^nu)||. No globalisation.
[[nodiscard]] inline NewtonReport solve(const NonlinearProblem& problem, const DenseVector& u0,
                                        const StrategyKind& strategy, const ForcingConfig& fcfg,
                                        const NewtonConfig& ncfg, const KrylovConfig& kcfg) {
  fcfg.validate();
  ncfg.validate();
  kcfg.validate();
  if (u0.size() != problem.dimension) throw DimensionMismatch("newton: initial guess length");

  NewtonReport rep;
  DenseVector u = u0;
  DenseVector r = problem.residual(u);
  double res = norm2(r);
  rep.initial_res_norm = res;
  rep.residual_history.push_back(res);

  auto finish = [&](NewtonStatus status, std::string message) {
    rep.status = status;
    rep.converged = status == NewtonStatus::converged;
    rep.message = std::move(message);
    rep.final_res_norm = res;
    rep.total_outer = static_cast<int>(rep.iterations.size());
    rep.solution = u;
    return rep;
  };

  if (!std::isfinite(res)) return finish(NewtonStatus::nonfinite_residual, "initial residual not finite");
  const double tol = std::max(ncfg.rtol * res, ncfg.atol);

  DenseVector linear_model;  // R(u^{nu-1}) + R'(u^{nu-1}) d^{nu-1}
  DenseVector r_prev;
  for (int nu = 0;; ++nu) {
    ForcingInputs in;
    in.nu = nu;
    in.res_norm_current = res;
    if (nu > 0) {
      OuterIterRecord& last = rep.iterations.back();
      last.disagreement_norm = norm2(r - linear_model);
      last.actual_reduction = last.res_norm - res;
      last.residual_change_norm = norm2(r_prev - r);
      in.prev = PreviousStep{last.res_norm,
                             last.linear_model_residual_norm,
                             *last.disagreement_norm,
                             *last.actual_reduction,
                             last.predicted_reduction,
                             *last.residual_change_norm,
                             last.eta_used};
    }
    if (res <= tol) return finish(NewtonStatus::converged, "");
    if (nu >= ncfg.max_outer) return finish(NewtonStatus::max_outer_reached, "outer iteration limit reached");

    OuterIterRecord rec;
    rec.nu = nu;
    rec.res_norm = res;
    rec.eta_used = next_eta(strategy, fcfg, in);

    const CsrMatrix jac = problem.jacobian(u);
    std::optional<Ilu0Factors> ilu;
    try {
      if (kcfg.preconditioner == Preconditioner::ilu0) ilu.emplace(ilu0_factorize(jac));
    } catch (const SingularPivot& e) {
      rep.iterations.push_back(rec);
      return finish(NewtonStatus::inner_solver_failed, e.what());
    }
    const Ilu0Factors* precond = ilu ? &*ilu : nullptr;
    const DenseVector rhs = -r;

    KrylovResult lin;
    if (ncfg.probe_oversolving) {
      rec.oversolving_trace = oversolve_probe(problem, u, jac, rhs, rec.eta_used, precond, kcfg, &lin);
    } else {
      lin = gmres_solve(jac, rhs, rec.eta_used, precond, kcfg);
    }
    rec.inner_iterations = lin.iterations;
    rec.inner_converged = lin.converged;
    rep.total_inner += lin.iterations;

    linear_model = r + spmv(jac, lin.solution);
    rec.linear_model_residual_norm = norm2(linear_model);
    rec.predicted_reduction = res - rec.linear_model_residual_norm;
    rep.iterations.push_back(rec);
    if (!lin.converged) {
      return finish(NewtonStatus::inner_solver_failed, "gmres did not reach the forcing tolerance");
    }

    u += lin.solution;
    if (problem.admissible && !problem.admissible(u)) ++rep.nonphysical_iterates;
    r_prev = std::move(r);
    r = problem.residual(u);
    res = norm2(r);
    rep.residual_history.push_back(res);
    if (!std::isfinite(res)) return finish(NewtonStatus::nonfinite_residual, "residual not finite");
  }
}

}  // namespace inewton
