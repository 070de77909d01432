#pragma once

#include <algorithm>
#include <cmath>

#include "inewton/error.hpp"
#include "inewton/forcing/strategy.hpp"

namespace inewton {

/// Exponent applied to the choice-1 ratio at outer iteration nu >= 1. Rises
/// from about 1 towards 2.
[[nodiscard]] inline double p_schedule(Schedule schedule, int nu) {
  if (nu < 1) throw Error("p_schedule: nu must be >= 1");
  const double v = nu;
  switch (schedule) {
    case Schedule::steep: return std::min(2.0, 2.0 - (2.5 / v) * std::exp(-v));
    case Schedule::exp: return std::min(2.0, 2.0 - std::exp(1.0 - std::pow(v, 0.7)));
    case Schedule::cub: return std::min(2.0, v * v * v / 250.0 + v * v / 250.0 + v / 250.0 + 1.0);
  }
  return 1.0;
}

/// Coefficient of the choice-2 ratio at outer iteration nu >= 1, decaying
/// from phi0 down to the floor eps0.
///
/// The cubic at nu = 1 evaluates to 1.004 * phi0; the value is capped at
/// phi0 so the schedule stays within [eps0, phi0].
[[nodiscard]] inline double phi_schedule(Schedule schedule, int nu, const ForcingConfig& cfg) {
  if (nu < 1) throw Error("phi_schedule: nu must be >= 1");
  const double v = nu;
  double phi = cfg.phi0;
  switch (schedule) {
    case Schedule::steep: phi = cfg.phi0 * std::exp(1.0 - v); break;
    case Schedule::exp: phi = cfg.phi0 * std::exp(1.0 - std::pow(v, 0.7)); break;
    case Schedule::cub:
      phi = cfg.phi0 * (-v * v * v / 250.0 + v * v / 250.0 + v / 250.0 + 1.0);
      break;
  }
  return std::max(cfg.eps0, std::min(cfg.phi0, phi));
}

}  // namespace inewton
