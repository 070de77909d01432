#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>

#include "inewton/linalg/csr_matrix.hpp"
#include "inewton/linalg/dense_vector.hpp"

namespace inewton {

/// R: D in R^n -> R^n together with its assembled Jacobian.
struct NonlinearProblem {
  std::string name;
  std::size_t dimension = 0;
  std::function<DenseVector(const DenseVector&)> residual;
  std::function<CsrMatrix(const DenseVector&)> jacobian;
  DenseVector initial_guess;
  std::optional<DenseVector> exact_solution;
  /// Optional physical-admissibility test. A state outside the admissible
  /// set still has a residual; the solver only counts such iterates.
  std::function<bool(const DenseVector&)> admissible;
};

}  // namespace inewton
