// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "cbp/cases.hpp"

using namespace cbp;

namespace {
const GasParams gp{};
}

TEST_CASE("static_discontinuity_element nodal states") {
  GasParams g5 = gp;
  g5.sigma_min = 0.1;
  const ElementSolution e = static_discontinuity_element(g5);
  REQUIRE(e.degree == 9);
  REQUIRE(e.coeffs.rows() == 10);

  const ConservedState left = node_state(e, 0);
  CHECK(left.rho == doctest::Approx(1.0));
  CHECK(left.m[0] == doctest::Approx(1.0));
  CHECK(left.E == doctest::Approx(0.5 + 5e-11));

  const ConservedState right = node_state(e, 9);
  CHECK(right.rho == doctest::Approx(3.0));
  CHECK(right.m[0] == doctest::Approx(9.0));
  CHECK(right.E == doctest::Approx(16.0));

  // Nodal pressures are at their floors or above: discretely feasible.
  for (int k = 0; k < 10; ++k) {
    CHECK(pressure(node_state(e, k), g5) >= 2e-11 * (1.0 - 1e-9));
  }

  // The element mean is feasible for all three constraints.
  const ConservedState mean = element_mean(e);
  CHECK(mean.rho > 1e-3);
  CHECK(pressure(mean, g5) > 1e-3);
  CHECK(specific_entropy(mean, g5) > 0.1 + 1e-3);
}

TEST_CASE("vortex_ic far field") {
  const VortexParams vp;
  Coord x(2);
  x << 10.0, 10.0;
  const ConservedState u = vortex_ic(x, vp, gp);
  const double p_inf = 1.0 / (gp.gamma * vp.M * vp.M);
  CHECK(pressure(u, gp) == doctest::Approx(p_inf).epsilon(1e-10));
  CHECK(u.rho == doctest::Approx(std::pow(p_inf, 1.0 / gp.gamma)).epsilon(1e-10));
  const PrimitiveState prim = cons_to_prim(u, gp);
  CHECK(std::abs(prim.v[0]) <= 1e-10);
  CHECK(prim.v[1] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("vortex_exact advection") {
  const VortexParams vp;
  Coord x(2);
  x << 1.25, -3.5;
  const StateVec ic = to_state_vec(vortex_ic(x, vp, gp));
  CHECK((to_state_vec(vortex_exact(x, 0.0, vp, gp)) - ic).cwiseAbs().maxCoeff() ==
        0.0);
  CHECK((to_state_vec(vortex_exact(x, 20.0, vp, gp)) - ic).cwiseAbs().maxCoeff() ==
        0.0);

  // At t = 10 the pattern sits half a box farther along y.
  Coord moved = x;
  moved[1] = x[1] + 10.0;
  const StateVec disp = to_state_vec(vortex_exact(moved, 10.0, vp, gp));
  CHECK((disp - ic).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("linf_pressure_error") {
  const VortexParams vp;
  Mesh mesh;
  mesh.dim = 2;
  mesh.n = {4, 4};
  mesh.box.lo = Coord::Constant(2, vp.box_lo);
  mesh.box.hi = Coord::Constant(2, vp.box_hi);
  auto exact = [&](const Coord& x) { return vortex_ic(x, vp, gp); };
  FieldState fs = init_field(mesh, 3, exact);

  const ErrorReport zero = linf_pressure_error(fs, exact, gp);
  CHECK(zero.value == 0.0);
  CHECK(zero.norm == "Linf");
  CHECK(zero.variable == "pressure");

  // A uniform pressure offset shows up verbatim in the norm.
  const double delta = 7.5e-3;
  for (auto& e : fs.elements) {
    e.coeffs.col(3).array() += delta / (gp.gamma - 1.0);
  }
  const ErrorReport off = linf_pressure_error(fs, exact, gp);
  CHECK(off.value == doctest::Approx(delta).epsilon(1e-10));
}
