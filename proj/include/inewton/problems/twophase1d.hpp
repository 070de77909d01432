#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "inewton/error.hpp"
#include "inewton/newton/problem.hpp"

namespace inewton::problems {

/// Physical setup of the 1D immiscible displacement.
struct TwoPhaseParams {
  int cells = 100;
  /// Total Darcy velocity, normalised; the sign selects the flow direction.
  double velocity = 1.0;
  /// Water/oil viscosity ratio entering the fractional flow.
  double mobility_ratio = 2.0;
  /// Water fraction of the injected stream at the inflow boundary.
  double injection_fraction = 1.0;
  /// Uniform water saturation at t = 0.
  double initial_saturation = 0.0;

  void validate() const {
    if (cells < 2) throw ConfigError("twophase1d: cells must be >= 2");
    if (!(mobility_ratio > 0.0)) throw ConfigError("twophase1d: mobility_ratio must be positive");
    if (!(injection_fraction >= 0.0 && injection_fraction <= 1.0)) {
      throw ConfigError("twophase1d: injection_fraction must lie in [0,1]");
    }
    if (!(initial_saturation >= 0.0 && initial_saturation <= 1.0)) {
      throw ConfigError("twophase1d: initial_saturation must lie in [0,1]");
    }
    if (!std::isfinite(velocity)) throw ConfigError("twophase1d: velocity must be finite");
  }
};

/// Buckley-Leverett fractional flow with quadratic relative permeabilities:
/// f(s) = s^2 / (s^2 + M (1 - s)^2).
[[nodiscard]] inline double fractional_flow(double s, double mobility_ratio) {
  const double w = s * s;
  const double o = mobility_ratio * (1.0 - s) * (1.0 - s);
  return w / (w + o);
}

[[nodiscard]] inline double fractional_flow_derivative(double s, double mobility_ratio) {
  const double d = s * s + mobility_ratio * (1.0 - s) * (1.0 - s);
  return 2.0 * mobility_ratio * s * (1.0 - s) / (d * d);
}

/// Saturations within [-0.1, 1.1] are treated as physically admissible.
[[nodiscard]] inline bool saturation_admissible(const DenseVector& s) {
  for (double v : s) {
    if (!(v >= -0.1 && v <= 1.1)) return false;
  }
  return true;
}

/// Boundary fluxes of a state: water entering and leaving per unit time.
struct BoundaryFlux {
  double influx = 0.0;
  double outflux = 0.0;
};

[[nodiscard]] inline BoundaryFlux boundary_flux(const TwoPhaseParams& prm, const DenseVector& s) {
  const double v = prm.velocity;
  const double m = prm.mobility_ratio;
  const std::size_t last = s.size() - 1;
  if (v >= 0.0) return {v * prm.injection_fraction, v * fractional_flow(s[last], m)};
  return {-v * prm.injection_fraction, -v * fractional_flow(s[0], m)};
}

/// One backward-Euler step of s_t + (v f(s))_x = 0 on the unit interval with
/// first-order upwind fluxes. Unknowns are the cell saturations at the new
/// time level; the residual of cell i is
///   dx (s_i - s_prev_i) + dt (F_{i+1/2} - F_{i-1/2}).
[[nodiscard]] inline NonlinearProblem twophase1d(const TwoPhaseParams& prm, double dt,
                                                 const DenseVector& state_prev) {
  prm.validate();
  if (!(dt > 0.0)) throw ConfigError("twophase1d: dt must be positive");
  const auto n = static_cast<std::size_t>(prm.cells);
  if (state_prev.size() != n) throw DimensionMismatch("twophase1d: previous state length");
  for (double v : state_prev) {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("twophase1d: previous saturations must lie in [0,1]");
  }
  const double dx = 1.0 / static_cast<double>(n);
  const double v = prm.velocity;
  const double m = prm.mobility_ratio;
  const double f_inj = prm.injection_fraction;

  NonlinearProblem p;
  p.name = "twophase1d";
  p.dimension = n;
  p.initial_guess = state_prev;
  p.admissible = saturation_admissible;

  p.residual = [=](const DenseVector& s) {
    if (s.size() != n) throw DimensionMismatch("twophase1d: state length");
    // face[k] is the flux through the face left of cell k; face[n] the outlet/inlet on the right.
    std::vector<double> face(n + 1);
    if (v >= 0.0) {
      face[0] = v * f_inj;
      for (std::size_t k = 0; k < n; ++k) face[k + 1] = v * fractional_flow(s[k], m);
    } else {
      face[n] = v * f_inj;
      for (std::size_t k = 0; k < n; ++k) face[k] = v * fractional_flow(s[k], m);
    }
    DenseVector r(n);
    for (std::size_t k = 0; k < n; ++k) {
      r[k] = dx * (s[k] - state_prev[k]) + dt * (face[k + 1] - face[k]);
    }
    return r;
  };

  p.jacobian = [=](const DenseVector& s) {
    std::vector<Triplet> t;
    t.reserve(2 * n);
    for (std::size_t k = 0; k < n; ++k) {
      const double df = fractional_flow_derivative(s[k], m);
      if (v >= 0.0) {
        t.push_back({k, k, dx + dt * v * df});
        if (k + 1 < n) t.push_back({k + 1, k, -dt * v * df});
      } else {
        t.push_back({k, k, dx - dt * v * df});
        if (k > 0) t.push_back({k - 1, k, dt * v * df});
      }
    }
    return CsrMatrix::from_triplets(n, n, std::move(t));
  };
  return p;
}

}  // namespace inewton::problems
