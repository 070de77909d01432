#pragma once

#include <cstddef>
#include <vector>

#include "inewton/error.hpp"
#include "inewton/newton/problem.hpp"

namespace inewton::problems {

/// Midpoint-rule discretisation of the Chandrasekhar H-equation
///   R_i(H) = H_i - (1 - (c / 2n) sum_j mu_i H_j / (mu_i + mu_j))^{-1},
/// mu_i = (i - 1/2) / n. The Jacobian is dense.
[[nodiscard]] inline NonlinearProblem chandrasekhar_h(int n_points, double c) {
  if (n_points < 2) throw ConfigError("heq: n_points must be >= 2");
  if (!(c >= 0.0 && c < 1.0)) throw ConfigError("heq: c must lie in [0,1)");
  const auto n = static_cast<std::size_t>(n_points);

  // kernel[i*n + j] = (c / 2n) mu_i / (mu_i + mu_j)
  std::vector<double> kernel(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double mi = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double mj = (static_cast<double>(j) + 0.5) / static_cast<double>(n);
      kernel[i * n + j] = c / (2.0 * static_cast<double>(n)) * mi / (mi + mj);
    }
  }

  NonlinearProblem p;
  p.name = "heq";
  p.dimension = n;
  p.initial_guess = DenseVector(n, 1.0);
  if (c == 0.0) p.exact_solution = DenseVector(n, 1.0);

  auto inner_sums = [kernel, n](const DenseVector& h) {
    if (h.size() != n) throw DimensionMismatch("heq: state length");
    std::vector<double> s(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += kernel[i * n + j] * h[j];
      s[i] = acc;
    }
    return s;
  };

  p.residual = [inner_sums, n](const DenseVector& h) {
    const auto s = inner_sums(h);
    DenseVector r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = h[i] - 1.0 / (1.0 - s[i]);
    return r;
  };

  p.jacobian = [inner_sums, kernel, n](const DenseVector& h) {
    const auto s = inner_sums(h);
    std::vector<double> dense(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      const double g2 = 1.0 / ((1.0 - s[i]) * (1.0 - s[i]));
      for (std::size_t k = 0; k < n; ++k) {
        dense[i * n + k] = (i == k ? 1.0 : 0.0) - g2 * kernel[i * n + k];
      }
    }
    return CsrMatrix::from_dense(n, n, dense);
  };
  return p;
}

}  // namespace inewton::problems
