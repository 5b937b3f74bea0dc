// SPDX-License-Identifier: Apache-2.0

#include "cbp/cases.hpp"

#include <cmath>

namespace cbp {

ElementSolution static_discontinuity_element(const GasParams& gp) {
  const int degree = 9;
  const ElementBasis& basis = element_basis(degree, 1);
  ElementSolution e;
  e.degree = degree;
  e.dim = 1;
  e.geom.lo = Coord::Constant(1, 0.0);
  e.geom.hi = Coord::Constant(1, 1.0);
  e.coeffs.resize(basis.n_nodes, 3);
  for (int k = 0; k < basis.n_nodes; ++k) {
    const double x = basis.nodes1d[k];
    PrimitiveState p;
    p.v.resize(1);
    if (x <= 0.5) {
      p.rho = 1.0;
      p.v[0] = 1.0;
      p.P = 2.0 * gp.p_min;
    } else {
      p.rho = 3.0;
      p.v[0] = 3.0;
      p.P = 1.0;
    }
    e.coeffs.row(k) = to_state_vec(prim_to_cons(p, gp)).transpose();
  }
  return e;
}

ConservedState vortex_ic(const Coord& x, const VortexParams& vp,
                         const GasParams& gp) {
  const double dx = x[0] - vp.center[0];
  const double dy = x[1] - vp.center[1];
  const double r2 = dx * dx + dy * dy;
  const double phi = std::exp((1.0 - r2) / (2.0 * vp.R * vp.R));
  const double swirl = vp.S / (2.0 * M_PI * vp.R);

  const double base = 1.0 - vp.S * vp.S * vp.M * vp.M * (gp.gamma - 1.0) /
                                (8.0 * M_PI * M_PI) * phi * phi;
  if (!(base >= 0.0)) {
    throw DegenerateStateError("vortex_ic: negative pressure argument");
  }
  PrimitiveState p;
  p.P = std::pow(base, gp.gamma / (gp.gamma - 1.0)) / (gp.gamma * vp.M * vp.M);
  p.rho = std::pow(p.P, 1.0 / gp.gamma);
  p.v.resize(2);
  p.v[0] = swirl * dy * phi;
  p.v[1] = 1.0 - swirl * dx * phi;
  return prim_to_cons(p, gp);
}

ConservedState vortex_exact(const Coord& x, double t, const VortexParams& vp,
                            const GasParams& gp) {
  const double L = vp.box_length();
  // Reduce the advection offset first so integer flow-throughs wrap exactly.
  const double shift = std::fmod(t, L);
  Coord x0 = x;
  double y = x[1] - shift;
  if (y < vp.box_lo) y += L;
  if (y >= vp.box_hi) y -= L;
  x0[1] = y;
  return vortex_ic(x0, vp, gp);
}

ErrorReport linf_pressure_error(
    const FieldState& fs,
    const std::function<ConservedState(const Coord&)>& exact,
    const GasParams& gp) {
  const ElementBasis& basis = element_basis(fs.degree, fs.mesh.dim);
  ErrorReport report;
  for (const auto& e : fs.elements) {
    for (int k = 0; k < basis.n_nodes; ++k) {
      const Coord ref = basis.node_coords.row(k).transpose();
      const Coord pos = e.geom.to_physical(ref);
      const double p_num = pressure(node_state(e, k), gp);
      const double p_ref = pressure(exact(pos), gp);
      report.value = std::max(report.value, std::abs(p_num - p_ref));
    }
  }
  return report;
}

}  // namespace cbp
