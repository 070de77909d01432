#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "inewton/error.hpp"

namespace inewton {

struct OrderEstimate {
  double order = 0.0;
  /// Number of trailing errors used.
  int window = 0;
  std::vector<double> errors_used;
  /// log(e_{k+1}/e_k) / log(e_k/e_{k-1}) for each interior point of the window.
  std::vector<double> local_orders;
};

/// Empirical convergence order from the last `window` entries of an error
/// sequence: the median of log(e_{k+1}/e_k) / log(e_k/e_{k-1}).
[[nodiscard]] inline OrderEstimate estimate_order(std::span<const double> errors, int window) {
  if (window < 3) throw Error("estimate_order: window must be >= 3");
  const auto w = static_cast<std::size_t>(window);
  if (errors.size() < w) {
    throw Error("estimate_order: need at least " + std::to_string(w) + " errors, got " +
                std::to_string(errors.size()));
  }
  OrderEstimate est;
  est.window = window;
  est.errors_used.assign(errors.end() - static_cast<std::ptrdiff_t>(w), errors.end());
  const auto& e = est.errors_used;
  for (std::size_t k = 0; k < w; ++k) {
    if (!(e[k] > 0.0) || !std::isfinite(e[k])) throw Error("estimate_order: errors must be positive and finite");
    if (k > 0 && !(e[k] < e[k - 1])) throw Error("estimate_order: errors not strictly decreasing over the window");
  }
  for (std::size_t k = 1; k + 1 < w; ++k) {
    est.local_orders.push_back(std::log(e[k + 1] / e[k]) / std::log(e[k] / e[k - 1]));
  }
  std::vector<double> sorted = est.local_orders;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  est.order = (m % 2 == 1) ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  return est;
}

[[nodiscard]] inline OrderEstimate estimate_order(const std::vector<double>& errors, int window) {
  return estimate_order(std::span<const double>(errors), window);
}

}  // namespace inewton
