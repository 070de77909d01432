#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "inewton/newton/problem.hpp"
#include "inewton/verification/lemma1.hpp"

namespace inewton::verification {

/// A map with a known root and analytic Hoelder constants for R'.
struct ConstructedMap {
  NonlinearProblem problem;
  HolderConstants holder;
};

/// R(u) = A (u - u*): zero curvature, any (C, alpha) is valid.
[[nodiscard]] inline ConstructedMap affine_map(const CsrMatrix& a, const DenseVector& root) {
  if (!a.square() || a.rows() != root.size()) throw DimensionMismatch("affine_map: shape mismatch");
  ConstructedMap m;
  m.problem.name = "affine";
  m.problem.dimension = root.size();
  m.problem.initial_guess = DenseVector(root.size(), 0.0);
  m.problem.exact_solution = root;
  m.problem.residual = [a, root](const DenseVector& u) { return spmv(a, u - root); };
  m.problem.jacobian = [a](const DenseVector&) { return a; };
  m.holder = {0.0, 1.0};
  return m;
}

/// R(u) = A u - b with b = A u*. Along u + d this evaluates A(u + d) - b,
/// the same arithmetic as the linear residual b - A d when u = 0.
[[nodiscard]] inline ConstructedMap linear_system_map(const CsrMatrix& a, const DenseVector& root) {
  if (!a.square() || a.rows() != root.size()) throw DimensionMismatch("linear_system_map: shape mismatch");
  const DenseVector b = spmv(a, root);
  ConstructedMap m;
  m.problem.name = "linear";
  m.problem.dimension = root.size();
  m.problem.initial_guess = DenseVector(root.size(), 0.0);
  m.problem.exact_solution = root;
  m.problem.residual = [a, b](const DenseVector& u) { return spmv(a, u) - b; };
  m.problem.jacobian = [a](const DenseVector&) { return a; };
  m.holder = {0.0, 1.0};
  return m;
}

/// Scalar R(u) = u^2 with root 0; R'(u) = 2u is 2-Lipschitz.
[[nodiscard]] inline ConstructedMap scalar_square() {
  ConstructedMap m;
  m.problem.name = "square";
  m.problem.dimension = 1;
  m.problem.initial_guess = DenseVector{1.0};
  m.problem.exact_solution = DenseVector{0.0};
  m.problem.residual = [](const DenseVector& u) { return DenseVector{u[0] * u[0]}; };
  m.problem.jacobian = [](const DenseVector& u) {
    return CsrMatrix::from_triplets(1, 1, {{0, 0, 2.0 * u[0]}});
  };
  m.holder = {2.0, 1.0};
  return m;
}

/// R_i(u) = (A e)_i + 1/2 e^T H_i e with e = u - u*, random A (diagonally
/// dominant) and symmetric H_i. R'(u) - R'(u*) has rows e^T H_i, so
/// C = sqrt(sum_i ||H_i||_F^2) bounds its spectral norm by C ||e||.
[[nodiscard]] inline ConstructedMap quadratic_map(std::size_t n, std::uint64_t seed = 7) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = unif(rng);
    a[i * n + i] += static_cast<double>(n);
  }
  std::vector<std::vector<double>> hess(n, std::vector<double>(n * n));
  double c2 = 0.0;
  for (auto& h : hess) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = j; k < n; ++k) {
        const double v = unif(rng);
        h[j * n + k] = v;
        h[k * n + j] = v;
      }
    }
    for (double v : h) c2 += v * v;
  }
  DenseVector root(n);
  for (std::size_t i = 0; i < n; ++i) root[i] = unif(rng);

  ConstructedMap m;
  m.problem.name = "quadratic";
  m.problem.dimension = n;
  m.problem.initial_guess = DenseVector(n, 0.0);
  m.problem.exact_solution = root;
  m.problem.residual = [a, hess, root, n](const DenseVector& u) {
    const DenseVector e = u - root;
    DenseVector r(n);
    for (std::size_t i = 0; i < n; ++i) {
      double lin = 0.0;
      double quad = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        lin += a[i * n + j] * e[j];
        for (std::size_t k = 0; k < n; ++k) quad += e[j] * hess[i][j * n + k] * e[k];
      }
      r[i] = lin + 0.5 * quad;
    }
    return r;
  };
  m.problem.jacobian = [a, hess, root, n](const DenseVector& u) {
    const DenseVector e = u - root;
    std::vector<double> jac(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        double s = a[i * n + j];
        for (std::size_t k = 0; k < n; ++k) s += hess[i][j * n + k] * e[k];
        jac[i * n + j] = s;
      }
    }
    return CsrMatrix::from_dense(n, n, jac);
  };
  m.holder = {std::sqrt(c2), 1.0};
  return m;
}

}  // namespace inewton::verification
