// SPDX-License-Identifier: Apache-2.0
//
// Nodal DG semi-discretization of the Euler equations on uniform periodic
// Cartesian meshes, with SSP-RK3 time stepping and per-stage limiting.

#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "cbp/element.hpp"
#include "cbp/euler.hpp"
#include "cbp/limiter.hpp"

namespace cbp {

/// Uniform Cartesian mesh, periodic in every direction.
struct Mesh {
  int dim = 1;
  std::array<int, 2> n{1, 1};  ///< elements per direction (n[1] unused in 1D)
  BoxGeom box;

  int n_elements() const { return dim == 1 ? n[0] : n[0] * n[1]; }
  int index(int i, int j = 0) const { return i + n[0] * j; }
  BoxGeom element_box(int i, int j = 0) const;
};

enum class FluxKind { Rusanov };

struct SolverConfig {
  int degree = 4;
  FluxKind flux = FluxKind::Rusanov;
  double cfl = 0.1;
  double t_final = 0.0;
  std::optional<LimiterConfig> limiter{};       ///< nullopt: limiting off
  std::vector<ConstraintSpec> constraints{};    ///< ordered, see limit_element
  GasParams gas{};
};

/// Global solution: one ElementSolution per mesh element plus current time.
struct FieldState {
  Mesh mesh;
  int degree = 1;
  std::vector<ElementSolution> elements;
  double time = 0.0;
};

/// Rusanov (local Lax-Friedrichs) interface flux. Both states must be
/// admissible; a violation indicates limiter failure upstream.
StateVec riemann_rusanov(const ConservedState& u_left,
                         const ConservedState& u_right, const SpatialVec& normal,
                         const GasParams& gp);

/// Nodal interpolation of an initial condition given in physical coordinates.
FieldState init_field(const Mesh& mesh, int degree,
                      const std::function<ConservedState(const Coord&)>& ic);

/// Semi-discrete residual: time derivative of every element's nodal
/// coefficients under the weak form with Gauss-Legendre volume/surface
/// quadrature and periodic face coupling.
std::vector<Eigen::MatrixXd> rhs(const FieldState& fs, const SolverConfig& cfg);

/// Invoked after limiting at the end of each RK stage (1-based index).
using StageCallback = std::function<void(const FieldState&, int stage)>;

/// One SSP-RK3 step; limiting is applied after every stage.
FieldState step(const FieldState& fs, const SolverConfig& cfg, double dt,
                const StageCallback& on_stage = {});

/// cfl * h / ((2p+1) * max wave speed over all volume quadrature points).
double stable_dt(const FieldState& fs, const SolverConfig& cfg);

/// Advance to cfg.t_final using stable_dt-sized steps (the initial field is
/// limited once before stepping when limiting is enabled).
FieldState advance(FieldState fs, const SolverConfig& cfg,
                   const StageCallback& on_stage = {});

/// Apply limit_element to every element in place.
void limit_field(FieldState& fs, const SolverConfig& cfg);

/// Volume-weighted sum of element means (the conserved totals).
StateVec conserved_totals(const FieldState& fs);

}  // namespace cbp
