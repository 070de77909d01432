#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "inewton/forcing/rules.hpp"

namespace inewton {

struct ScaleCheckResult {
  bool holds = true;
  /// max over scales of |eta(s) - eta(1)| / eta(1)
  double max_rel_deviation = 0.0;
};

/// Evaluates next_eta on the scenario with every norm multiplied by
/// s in {1e-6, 1, 1e6} and compares against s = 1 to 1e-14 relative.
[[nodiscard]] inline ScaleCheckResult check_scale_independence(const StrategyKind& strategy,
                                                               const ForcingConfig& fcfg,
                                                               const ForcingInputs& scenario) {
  constexpr std::array<double, 3> scales{1e-6, 1.0, 1e6};
  const double ref = next_eta(strategy, fcfg, scenario);
  ScaleCheckResult res;
  for (double s : scales) {
    const double eta = next_eta(strategy, fcfg, scenario.scaled(s));
    const double dev = std::abs(eta - ref) / std::abs(ref);
    res.max_rel_deviation = std::max(res.max_rel_deviation, dev);
  }
  res.holds = res.max_rel_deviation <= 1e-14;
  return res;
}

}  // namespace inewton
