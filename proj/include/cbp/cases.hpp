// SPDX-License-Identifier: Apache-2.0
//
// Benchmark problems: the single-element static discontinuity used to
// exercise the limiter, and the near-vacuum isentropic vortex with its
// analytic advected solution, plus the pressure error metric.

#pragma once

#include <functional>
#include <string>

#include "cbp/element.hpp"
#include "cbp/euler.hpp"
#include "cbp/solver.hpp"

namespace cbp {

/// Near-vacuum isentropic vortex parameters on the periodic box [-10,10]^2.
struct VortexParams {
  double R = 1.5;        ///< vortex radius
  double M = 0.4;        ///< Mach number
  double S = 28.11711;   ///< vortex strength
  Eigen::Vector2d center{0.0, 0.0};
  double box_lo = -10.0;
  double box_hi = 10.0;

  double box_length() const { return box_hi - box_lo; }
};

struct ErrorReport {
  std::string norm = "Linf";
  std::string variable = "pressure";
  double value = 0.0;
  std::string node_set = "gauss-lobatto";
};

/// Degree-9 1D element on [0,1] interpolating the two-state jump
/// (rho,u,P) = (1, 1, 2 p_min) for x <= 0.5 and (3, 3, 1) otherwise.
ElementSolution static_discontinuity_element(const GasParams& gp);

/// Vortex initial condition at physical coordinates x.
ConservedState vortex_ic(const Coord& x, const VortexParams& vp,
                         const GasParams& gp);

/// Analytic solution: the initial condition advected by the background
/// velocity (0, 1) with periodic wrap.
ConservedState vortex_exact(const Coord& x, double t, const VortexParams& vp,
                            const GasParams& gp);

/// Max over all elements and Gauss-Lobatto solution nodes of the pressure
/// mismatch against a reference field given in physical coordinates.
ErrorReport linf_pressure_error(
    const FieldState& fs,
    const std::function<ConservedState(const Coord&)>& exact,
    const GasParams& gp);

}  // namespace cbp
