#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "inewton/error.hpp"
#include "inewton/newton/problem.hpp"

namespace inewton::problems {

/// -Laplace(u) - lambda exp(u) = 0 on the unit square with homogeneous
/// Dirichlet data, 5-point stencil on grid_n x grid_n interior nodes,
/// h = 1 / (grid_n + 1). Rows are scaled by h^2:
///   R_i = 4 u_i - sum(neighbours) - h^2 lambda exp(u_i).
[[nodiscard]] inline NonlinearProblem bratu2d(int grid_n, double lambda) {
  if (grid_n < 3) throw ConfigError("bratu2d: grid_n must be >= 3");
  if (!(lambda >= 0.0)) throw ConfigError("bratu2d: lambda must be non-negative");
  const auto m = static_cast<std::size_t>(grid_n);
  const std::size_t n = m * m;
  const double h = 1.0 / static_cast<double>(grid_n + 1);
  const double h2l = h * h * lambda;

  NonlinearProblem p;
  p.name = "bratu2d";
  p.dimension = n;
  p.initial_guess = DenseVector(n, 0.0);
  if (lambda == 0.0) p.exact_solution = DenseVector(n, 0.0);

  p.residual = [m, n, h2l](const DenseVector& u) {
    if (u.size() != n) throw DimensionMismatch("bratu2d: state length");
    DenseVector r(n);
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t k = j * m + i;
        double s = 4.0 * u[k];
        if (i > 0) s -= u[k - 1];
        if (i + 1 < m) s -= u[k + 1];
        if (j > 0) s -= u[k - m];
        if (j + 1 < m) s -= u[k + m];
        r[k] = s - h2l * std::exp(u[k]);
      }
    }
    return r;
  };

  p.jacobian = [m, n, h2l](const DenseVector& u) {
    std::vector<Triplet> t;
    t.reserve(5 * n);
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t k = j * m + i;
        if (j > 0) t.push_back({k, k - m, -1.0});
        if (i > 0) t.push_back({k, k - 1, -1.0});
        t.push_back({k, k, 4.0 - h2l * std::exp(u[k])});
        if (i + 1 < m) t.push_back({k, k + 1, -1.0});
        if (j + 1 < m) t.push_back({k, k + m, -1.0});
      }
    }
    return CsrMatrix::from_triplets(n, n, std::move(t));
  };
  return p;
}

}  // namespace inewton::problems
