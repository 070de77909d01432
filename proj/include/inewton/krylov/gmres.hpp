#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "inewton/error.hpp"
#include "inewton/linalg/csr_matrix.hpp"
#include "inewton/linalg/dense_vector.hpp"
#include "inewton/linalg/ilu0.hpp"

namespace inewton {

enum class Preconditioner { none, ilu0 };

inline std::string to_string(Preconditioner p) { return p == Preconditioner::ilu0 ? "ilu0" : "none"; }

inline Preconditioner parse_preconditioner(const std::string& s) {
  if (s == "ilu0") return Preconditioner::ilu0;
  if (s == "none") return Preconditioner::none;
  throw ConfigError("unknown preconditioner '" + s + "' (expected ilu0 or none)");
}

struct KrylovConfig {
  int max_iters = 500;
  int restart = 50;
  /// Absolute floor on the target residual norm.
  double abs_floor = 0.0;
  /// Preconditioner the Newton driver builds from each Jacobian.
  Preconditioner preconditioner = Preconditioner::ilu0;

  void validate() const {
    if (max_iters <= 0) throw ConfigError("krylov.max_iters must be positive");
    if (restart <= 0) throw ConfigError("krylov.restart must be positive");
    if (restart > max_iters) throw ConfigError("krylov.restart must not exceed krylov.max_iters");
    if (!(abs_floor >= 0.0)) throw ConfigError("krylov.abs_floor must be non-negative");
  }
};

struct KrylovResult {
  DenseVector solution;
  int iterations = 0;
  /// |g_{j+1}| / ||b|| from the Givens recurrence, one entry per inner iteration.
  std::vector<double> relative_residual_history;
  bool converged = false;
  /// ||b - A x|| recomputed at the end.
  double residual_norm = 0.0;
};

/// Called after each inner iteration with the 1-based global iteration count
/// and the iterate the solver would return if it stopped there.
using IterateObserver = std::function<void(int, const DenseVector&)>;

/// Relative stopping threshold is never tighter than this multiple of ||b||.
inline constexpr double gmres_relative_floor = 1e-14;

/// Restarted right-preconditioned GMRES with modified Gram-Schmidt, zero
/// initial guess. Stops when the true residual satisfies
/// ||b - A x|| <= max(eta ||b||, abs_floor, 1e-14 ||b||).
[[nodiscard]] inline KrylovResult gmres_solve(const CsrMatrix& a, const DenseVector& b, double eta,
                                              const Ilu0Factors* precond, const KrylovConfig& cfg,
                                              const IterateObserver& observer = {}) {
  if (!a.square()) throw DimensionMismatch("gmres: matrix not square");
  if (a.rows() != b.size()) throw DimensionMismatch("gmres: rhs length mismatch");
  if (precond != nullptr && precond->size() != b.size()) {
    throw DimensionMismatch("gmres: preconditioner size mismatch");
  }
  cfg.validate();

  const std::size_t n = b.size();
  KrylovResult out;
  out.solution = DenseVector(n);
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    out.converged = true;
    return out;
  }
  const double target = std::max({eta * bnorm, cfg.abs_floor, gmres_relative_floor * bnorm});

  const auto m = static_cast<std::size_t>(cfg.restart);
  std::vector<DenseVector> basis(m + 1, DenseVector(n));
  std::vector<std::vector<double>> hess(m + 1, std::vector<double>(m, 0.0));
  std::vector<double> cs(m, 0.0);
  std::vector<double> sn(m, 0.0);
  std::vector<double> g(m + 1, 0.0);
  DenseVector w(n);
  DenseVector z(n);

  auto precondition = [&](const DenseVector& v, DenseVector& result) {
    if (precond != nullptr) {
      precond->apply(v, result);
    } else {
      result = v;
    }
  };

  // x + M^{-1} V(:, 0:k) y(0:k) where y solves the leading k x k triangle.
  auto correction = [&](std::size_t k, DenseVector& x) {
    std::vector<double> y(k, 0.0);
    for (std::size_t ii = k; ii-- > 0;) {
      double s = g[ii];
      for (std::size_t jj = ii + 1; jj < k; ++jj) s -= hess[ii][jj] * y[jj];
      y[ii] = s / hess[ii][ii];
    }
    DenseVector combo(n);
    for (std::size_t jj = 0; jj < k; ++jj) combo.axpy(y[jj], basis[jj]);
    DenseVector step(n);
    precondition(combo, step);
    x += step;
  };

  DenseVector r = b;
  double beta = bnorm;
  while (out.iterations < cfg.max_iters) {
    basis[0] = r;
    basis[0] *= 1.0 / beta;
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;

    std::size_t k = 0;
    while (k < m && out.iterations < cfg.max_iters) {
      precondition(basis[k], z);
      a.multiply(z, w);
      const double w_norm0 = norm2(w);
      for (std::size_t i = 0; i <= k; ++i) {
        hess[i][k] = dot(w, basis[i]);
        w.axpy(-hess[i][k], basis[i]);
      }
      const double h_next = norm2(w);
      for (std::size_t i = 0; i < k; ++i) {
        const double t = cs[i] * hess[i][k] + sn[i] * hess[i + 1][k];
        hess[i + 1][k] = -sn[i] * hess[i][k] + cs[i] * hess[i + 1][k];
        hess[i][k] = t;
      }
      const double denom = std::hypot(hess[k][k], h_next);
      if (denom == 0.0) throw Error("gmres: singular Hessenberg column (A M^-1 singular)");
      cs[k] = hess[k][k] / denom;
      sn[k] = h_next / denom;
      hess[k][k] = denom;
      g[k + 1] = -sn[k] * g[k];
      g[k] = cs[k] * g[k];
      ++k;
      ++out.iterations;
      out.relative_residual_history.push_back(std::abs(g[k]) / bnorm);

      if (observer) {
        DenseVector x_trial = out.solution;
        correction(k, x_trial);
        observer(out.iterations, x_trial);
      }

      const bool breakdown = h_next <= 1e-14 * w_norm0;
      if (breakdown || std::abs(g[k]) <= target) break;
      basis[k] = w;
      basis[k] *= 1.0 / h_next;
    }

    correction(k, out.solution);
    a.multiply(out.solution, r);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    beta = norm2(r);
    if (beta <= target) {
      out.converged = true;
      break;
    }
  }
  out.residual_norm = beta;
  return out;
}

}  // namespace inewton
