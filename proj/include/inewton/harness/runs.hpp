#pragma once

#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "inewton/harness/config.hpp"
#include "inewton/problems/bratu2d.hpp"
#include "inewton/problems/chandrasekhar.hpp"
#include "inewton/problems/twophase1d.hpp"
#include "inewton/timestepping/transient.hpp"
#include "inewton/verification/constructed_maps.hpp"

namespace inewton::harness {

namespace fs = std::filesystem;

inline int int_param(const ProblemSpec& spec, const std::string& key) {
  const double v = spec.param(key);
  if (v != std::floor(v) || v < 1.0) throw ConfigError(spec.name + "." + key + " must be a positive integer");
  return static_cast<int>(v);
}

inline problems::TwoPhaseParams twophase_params(const ProblemSpec& spec) {
  problems::TwoPhaseParams p;
  p.cells = int_param(spec, "cells");
  p.velocity = spec.param("velocity");
  p.mobility_ratio = spec.param("mobility_ratio");
  p.injection_fraction = spec.param("injection_fraction");
  p.initial_saturation = spec.param("initial_saturation");
  p.validate();
  return p;
}

/// R(u) = A u - b, A tridiagonal (-1, 4, -1), with a seeded random root.
inline NonlinearProblem affine_problem(int n, std::uint64_t seed) {
  std::vector<Triplet> t;
  for (int i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    t.push_back({ui, ui, 4.0});
    if (i > 0) t.push_back({ui, ui - 1, -1.0});
    if (i + 1 < n) t.push_back({ui, ui + 1, -1.0});
  }
  const auto un = static_cast<std::size_t>(n);
  const CsrMatrix a = CsrMatrix::from_triplets(un, un, t);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  DenseVector root(un);
  for (double& v : root) v = unif(rng);
  return verification::linear_system_map(a, root).problem;
}

/// The steady problem of a spec. Throws for transient problems.
inline NonlinearProblem build_steady_problem(const ProblemSpec& spec, std::uint64_t seed) {
  if (spec.name == "bratu2d") return problems::bratu2d(int_param(spec, "n"), spec.param("lambda"));
  if (spec.name == "heq") return problems::chandrasekhar_h(int_param(spec, "n"), spec.param("c"));
  if (spec.name == "affine") return affine_problem(int_param(spec, "n"), seed);
  throw ConfigError("problem '" + spec.name + "' is not a steady problem");
}

/// Outcome of one (problem, strategy) pair.
struct RunOutcome {
  /// The run finished, converged or not. False only when it threw.
  bool completed = false;
  std::string status;
  int inner = 0;
  int outer = 0;
  int cuts = 0;
  long long ms = 0;
  json trace;
};

inline json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

/// JSON with every OuterIterRecord of a Newton solve.
inline json to_json(const NewtonReport& rep) {
  json iters = json::array();
  for (const auto& it : rep.iterations) {
    json rec{{"nu", it.nu},
             {"res_norm", it.res_norm},
             {"eta_used", it.eta_used},
             {"inner_iterations", it.inner_iterations},
             {"inner_converged", it.inner_converged},
             {"linear_model_residual_norm", it.linear_model_residual_norm},
             {"disagreement_norm", optional_json(it.disagreement_norm)},
             {"actual_reduction", optional_json(it.actual_reduction)},
             {"predicted_reduction", it.predicted_reduction},
             {"residual_change_norm", optional_json(it.residual_change_norm)}};
    if (it.oversolving_trace) {
      json lin = json::array();
      json non = json::array();
      for (const auto& s : *it.oversolving_trace) {
        lin.push_back(s.linear_rel_residual);
        non.push_back(s.nonlinear_res_norm);
      }
      rec["linear_rel_residual"] = std::move(lin);
      rec["nonlinear_res_norm"] = std::move(non);
    }
    iters.push_back(std::move(rec));
  }
  return json{{"converged", rep.converged},
              {"status", to_string(rep.status)},
              {"message", rep.message},
              {"total_inner", rep.total_inner},
              {"total_outer", rep.total_outer},
              {"initial_res_norm", rep.initial_res_norm},
              {"final_res_norm", rep.final_res_norm},
              {"residual_history", rep.residual_history},
              {"nonphysical_iterates", rep.nonphysical_iterates},
              {"iterations", std::move(iters)}};
}

inline json to_json(const TransientReport& rep) {
  json steps = json::array();
  for (const auto& s : rep.per_step) {
    steps.push_back(json{{"t", s.t},
                         {"dt", s.dt},
                         {"accepted", s.accepted},
                         {"outer", s.outer},
                         {"inner", s.inner},
                         {"newton", to_json(s.newton)}});
  }
  return json{{"completed", rep.completed},
              {"failure", rep.failure},
              {"steps_attempted", rep.steps_attempted},
              {"steps_accepted", rep.steps_accepted},
              {"cuts", rep.cuts},
              {"cumulative_outer", rep.cumulative_outer},
              {"cumulative_inner", rep.cumulative_inner},
              {"accepted_outer", rep.accepted_outer},
              {"accepted_inner", rep.accepted_inner},
              {"t_final", rep.t_final},
              {"steps", std::move(steps)}};
}

inline json to_json(const RunSettings& s) {
  return json{{"forcing",
               {{"eta0", s.forcing.eta0},
                {"eta_max", s.forcing.eta_max},
                {"eps0", s.forcing.eps0},
                {"gamma", s.forcing.gamma},
                {"r", s.forcing.r},
                {"phi0", s.forcing.phi0},
                {"an_p1", s.forcing.an_p1},
                {"an_p2", s.forcing.an_p2},
                {"an_p3", s.forcing.an_p3},
                {"botti_alpha", s.forcing.botti_alpha},
                {"safeguard", s.forcing.safeguard}}},
              {"newton", {{"rtol", s.newton.rtol}, {"atol", s.newton.atol}, {"max_outer", s.newton.max_outer}}},
              {"krylov",
               {{"max_iters", s.krylov.max_iters},
                {"restart", s.krylov.restart},
                {"abs_floor", s.krylov.abs_floor},
                {"preconditioner", to_string(s.krylov.preconditioner)}}},
              {"transient",
               {{"t_end", s.transient.t_end},
                {"dt_init", s.transient.dt_init},
                {"dt_min", s.transient.dt_min},
                {"dt_max", s.transient.dt_max},
                {"cut_factor", s.transient.cut_factor},
                {"growth_factor", s.transient.growth_factor}}}};
}

/// Runs one strategy on one problem. Library errors are caught and reported
/// through `completed = false`.
inline RunOutcome run_case(const ProblemSpec& spec, const StrategyKind& strategy, const RunSettings& settings,
                           std::uint64_t seed, bool timing) {
  RunOutcome out;
  out.trace = json{{"case", spec.case_name},
                   {"problem", spec.name},
                   {"params", spec.params},
                   {"strategy", strategy.label},
                   {"settings", to_json(settings)}};
  const auto start = std::chrono::steady_clock::now();
  try {
    if (spec.transient()) {
      const TransientReport rep = run_transient(twophase_params(spec), settings.transient, strategy,
                                                settings.forcing, settings.newton, settings.krylov);
      out.inner = rep.cumulative_inner;
      out.outer = rep.cumulative_outer;
      out.cuts = rep.cuts;
      out.status = rep.completed ? "completed" : "failed";
      out.trace["transient"] = to_json(rep);
    } else {
      const NonlinearProblem problem = build_steady_problem(spec, seed);
      const NewtonReport rep = solve(problem, problem.initial_guess, strategy, settings.forcing, settings.newton,
                                     settings.krylov);
      out.inner = rep.total_inner;
      out.outer = rep.total_outer;
      out.status = to_string(rep.status);
      out.trace["newton"] = to_json(rep);
    }
    out.completed = true;
  } catch (const std::exception& e) {
    out.status = std::string("error: ") + e.what();
  }
  if (timing) {
    out.ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  }
  out.trace["status"] = out.status;
  return out;
}

/// Writes `content` to a temporary sibling and renames it over `path`.
inline void write_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error("short write on " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

/// File-name-safe version of a label.
inline std::string slug(const std::string& s) {
  std::string out;
  for (char c : s) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.' || c == '_';
    out += ok ? c : '_';
  }
  return out;
}

}  // namespace inewton::harness
