// SPDX-License-Identifier: Apache-2.0
//
// Continuously bounds-preserving squeeze limiting. The limiting functional
// h is minimized over the element in reference coordinates; the limiting
// factor alpha = max(0, -min h) contracts the solution toward the element
// mean. The infeasible branch h^- comes in two flavors: the linearized
// ratio g/(g_mean - g), and the exact nonlinear factor -alpha* obtained by
// intersecting the constraint zero contour along the squeeze path
// (closed form for density/pressure, Illinois iteration for entropy).

#pragma once

#include <Eigen/Dense>

#include <optional>
#include <utility>
#include <vector>

#include "cbp/element.hpp"
#include "cbp/euler.hpp"

namespace cbp {

enum class LimiterMode { Linearized, Nonlinear };

struct LimiterConfig {
  double eps = 1e-12;       ///< feasibility tolerance for g(mean)
  LimiterMode mode = LimiterMode::Nonlinear;
  int newton_iters = 10;    ///< cap on refinement iterations (early exit)
  int illinois_iters = 5;
  double fd_step = 1e-5;    ///< finite-difference step in reference coords
  int seed_samples = 0;     ///< extra uniform seed/verification points
  double safety_kappa = 1e-10;  ///< relative margin on the optimized minimum
};

enum class LimitStatus { NoLimitingNeeded, Limited, MeanInfeasible };

struct LimitResult {
  double alpha = 0.0;
  Coord argmin_x;
  double g_min_before = 0.0;
  std::optional<double> g_min_after{};  ///< set when seed_samples > 0
  LimitStatus status = LimitStatus::NoLimitingNeeded;
};

/// u + alpha (mean - u); alpha = 0 is the identity, alpha = 1 the mean.
ConservedState squeeze(const ConservedState& u_x, const ConservedState& mean,
                       double alpha);

/// Feasible branch h+ = g(u)/g(mean). Caller guarantees g_u >= 0 and
/// g_mean >= eps.
double h_plus(double g_u, double g_mean);

/// Linearized infeasible branch h- = g(u)/(g(mean) - g(u)), in (-1, 0).
/// Caller guarantees g_u < 0 and g_mean >= eps.
double h_minus_linear(double g_u, double g_mean);

/// Exact limiting factor for the pressure constraint: the positive root of
/// the quadratic in alpha along the squeeze path, with a zero discriminant
/// floor; returns 1 when |A| < eps. Requires g2(u) < 0 and g2(mean) >= eps.
double pressure_alpha_star(const ConservedState& u, const ConservedState& mean,
                           const GasParams& gp, double eps);

/// Illinois root bracketing on g(alpha) with initial bracket [0, alpha_hi].
/// Runs exactly `iters` iterations of the halved-endpoint regula falsi and
/// returns the feasible upper bracket, so g(result) >= 0 always.
template <typename G>
double illinois_alpha_star(G&& g_of_alpha, double alpha_hi, int iters) {
  if (!(alpha_hi > 0.0 && alpha_hi <= 1.0)) {
    throw BracketError("illinois: alpha_hi outside (0, 1]");
  }
  double a_l = 0.0, a_h = alpha_hi;
  double g_l = g_of_alpha(a_l);
  double g_h = g_of_alpha(a_h);
  if (!(g_l < 0.0) || !(g_h >= 0.0)) {
    throw BracketError("illinois: initial bracket has no sign change");
  }
  for (int it = 0; it < iters; ++it) {
    const double denom = g_h - g_l;
    if (denom == 0.0) break;
    double a_m = (a_l * g_h - a_h * g_l) / denom;
    a_m = std::min(std::max(a_m, a_l), a_h);
    const double g_m = g_of_alpha(a_m);
    if (g_m < 0.0) {
      a_l = a_m;
      g_l = g_m;
      g_h *= 0.5;
    } else {
      a_h = a_m;
      g_h = g_m;
      g_l *= 0.5;
    }
  }
  return a_h;
}

/// The modified limiting functional h(u) for one constraint, dispatching on
/// feasibility of u and on the configured mode. Requires g(mean) >= cfg.eps.
double h_functional(const ConservedState& u_x, const ConservedState& mean,
                    const ConstraintSpec& spec, const LimiterConfig& cfg,
                    const GasParams& gp);

struct MinHResult {
  double value = 0.0;    ///< optimized minimum, reduced by the safety margin
  Coord argmin;
  double g_min = 0.0;    ///< smallest raw constraint value visited
};

/// Minimize h(u(x)) over the reference box: seeded at solution, volume, and
/// surface quadrature nodes, refined by Newton iterations with a gradient
/// descent fallback; all evaluated points participate in the minimum.
MinHResult find_min_h(const ElementSolution& e, const ModalForm& mf,
                      const ConservedState& mean, const ConstraintSpec& spec,
                      const LimiterConfig& cfg, const GasParams& gp);

/// Limiting factor for one constraint on one element.
LimitResult compute_alpha(const ElementSolution& e, const ConstraintSpec& spec,
                          const LimiterConfig& cfg, const GasParams& gp);

/// Sequential limiting over an ordered constraint set (density, pressure,
/// then optionally minimum entropy). The element mean is unchanged.
std::pair<ElementSolution, std::vector<LimitResult>> limit_element(
    const ElementSolution& e, const std::vector<ConstraintSpec>& specs,
    const LimiterConfig& cfg, const GasParams& gp);

}  // namespace cbp
