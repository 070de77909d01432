#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>

#include "inewton/error.hpp"
#include "inewton/linalg/csr_matrix.hpp"
#include "inewton/newton/problem.hpp"

namespace inewton {

/// Hoelder data of R' at the root: ||R'(u) - R'(u*)|| <= C ||u - u*||^alpha.
struct HolderConstants {
  double C = 0.0;
  double alpha = 1.0;

  void validate() const {
    if (!(C >= 0.0)) throw ConfigError("holder: C must be non-negative");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("holder: alpha must lie in (0,1]");
  }
};

struct Lemma1Result {
  bool holds = true;
  int samples = 0;
  int violations = 0;
  /// max over samples of lhs / rhs (0 when every lhs vanishes).
  double worst_ratio = 0.0;
};

/// Radius of the sampling ball around the root.
[[nodiscard]] inline double lemma1_radius(const DenseVector& root) { return 0.1 * norm2(root) + 0.1; }

namespace detail {

/// Uniform sample in the Euclidean ball of the given radius about `centre`.
inline DenseVector sample_ball(const DenseVector& centre, double radius, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const std::size_t n = centre.size();
  DenseVector dir(n);
  double len = 0.0;
  do {
    for (std::size_t i = 0; i < n; ++i) dir[i] = gauss(rng);
    len = norm2(dir);
  } while (len == 0.0);
  const double rho = radius * std::pow(unif(rng), 1.0 / static_cast<double>(n));
  DenseVector out = centre;
  out.axpy(rho / len, dir);
  return out;
}

}  // namespace detail

/// Samples pairs (u, v) in the ball about the exact solution and tests
///   ||R(v) - R(u) - R'(u)(v - u)|| <= C (2 ||u - u*||^a + ||v - u||^a / (a + 1)) ||v - u||
/// with a relative slack of 1e-10 plus the rounding error of the left-hand side.
[[nodiscard]] inline Lemma1Result check_lemma1(const NonlinearProblem& problem, const HolderConstants& hc,
                                               int samples, std::uint64_t seed = 20240611) {
  hc.validate();
  if (!problem.exact_solution) throw Error("check_lemma1: problem '" + problem.name + "' has no exact solution");
  if (samples < 1) throw Error("check_lemma1: samples must be >= 1");
  const DenseVector& root = *problem.exact_solution;
  const double radius = lemma1_radius(root);
  std::mt19937_64 rng(seed);

  Lemma1Result res;
  for (int s = 0; s < samples; ++s) {
    const DenseVector u = detail::sample_ball(root, radius, rng);
    const DenseVector v = detail::sample_ball(root, radius, rng);
    const DenseVector step = v - u;
    const DenseVector rv = problem.residual(v);
    const DenseVector ru = problem.residual(u);
    const DenseVector js = spmv(problem.jacobian(u), step);
    const double lhs = norm2(rv - ru - js);
    // Cancellation error of forming the left-hand side in floating point.
    const double rounding = 64.0 * std::numeric_limits<double>::epsilon() * (norm2(rv) + norm2(ru) + norm2(js));
    const double ds = norm2(step);
    const double du = norm2(u - root);
    const double rhs =
        hc.C * (2.0 * std::pow(du, hc.alpha) + std::pow(ds, hc.alpha) / (hc.alpha + 1.0)) * ds;
    ++res.samples;
    if (lhs > rhs * (1.0 + 1e-10) + rounding) {
      ++res.violations;
      res.holds = false;
    }
    if (lhs > 0.0) res.worst_ratio = std::max(res.worst_ratio, rhs > 0.0 ? lhs / rhs : std::numeric_limits<double>::infinity());
  }
  return res;
}

}  // namespace inewton
