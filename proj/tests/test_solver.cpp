// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "cbp/cases.hpp"
#include "cbp/solver.hpp"

using namespace cbp;

namespace {

const GasParams gp{};

Mesh unit_mesh_1d(int n) {
  Mesh m;
  m.dim = 1;
  m.n = {n, 1};
  m.box.lo = Coord::Constant(1, 0.0);
  m.box.hi = Coord::Constant(1, 1.0);
  return m;
}

ConservedState uniform_state() {
  PrimitiveState p;
  p.rho = 1.3;
  p.v = SpatialVec::Constant(1, 0.7);
  p.P = 0.9;
  return prim_to_cons(p, gp);
}

}  // namespace

TEST_CASE("riemann_rusanov consistency and conservation") {
  ConservedState u;
  u.rho = 1.2;
  u.m = SpatialVec::Constant(1, 0.4);
  u.E = 2.0;
  SpatialVec n = SpatialVec::Constant(1, 1.0);
  const StateVec f = riemann_rusanov(u, u, n, gp);
  const StateVec exact = flux_dot_n(u, n, gp);
  CHECK((f - exact).cwiseAbs().maxCoeff() <= 1e-14);

  ConservedState v = u;
  v.rho = 0.8;
  v.E = 1.5;
  const StateVec ab = riemann_rusanov(u, v, n, gp);
  const StateVec ba = riemann_rusanov(v, u, -n, gp);
  CHECK((ab + ba).cwiseAbs().maxCoeff() <= 1e-14);

  ConservedState bad = u;
  bad.E = 0.0;  // negative internal energy
  CHECK_THROWS_AS(riemann_rusanov(u, bad, n, gp), DegenerateStateError);
}

TEST_CASE("rhs vanishes on uniform flow") {
  SolverConfig sc;
  sc.degree = 3;
  sc.gas = gp;
  FieldState fs =
      init_field(unit_mesh_1d(4), 3, [&](const Coord&) { return uniform_state(); });
  double worst = 0.0;
  for (const auto& r : rhs(fs, sc)) {
    worst = std::max(worst, r.cwiseAbs().maxCoeff());
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("step keeps a constant field constant") {
  SolverConfig sc;
  sc.degree = 2;
  sc.gas = gp;
  LimiterConfig lc;
  sc.limiter = lc;
  sc.constraints = {{ConstraintKind::Density, gp.rho_min},
                    {ConstraintKind::Pressure, gp.p_min}};
  FieldState fs =
      init_field(unit_mesh_1d(5), 2, [&](const Coord&) { return uniform_state(); });
  const FieldState fs2 = step(fs, sc, 0.01);
  double worst = 0.0;
  for (std::size_t k = 0; k < fs.elements.size(); ++k) {
    worst = std::max(worst, (fs2.elements[k].coeffs - fs.elements[k].coeffs)
                                .cwiseAbs()
                                .maxCoeff());
  }
  CHECK(worst <= 1e-12);
  CHECK(fs2.time == doctest::Approx(0.01));
  CHECK_THROWS_AS(step(fs, sc, 0.0), ContractError);
}

TEST_CASE("stable_dt formula and scaling") {
  SolverConfig sc;
  sc.degree = 4;
  sc.gas = gp;
  sc.cfl = 0.1;
  PrimitiveState p;
  p.rho = 1.0;
  p.v = SpatialVec::Constant(1, 0.0);
  p.P = 1.0;
  const ConservedState rest = prim_to_cons(p, gp);
  FieldState fs =
      init_field(unit_mesh_1d(10), 4, [&](const Coord&) { return rest; });
  const double dt = stable_dt(fs, sc);
  CHECK(dt == doctest::Approx(0.1 * 0.1 / (9.0 * std::sqrt(1.4))).epsilon(1e-12));

  sc.cfl = 0.2;
  CHECK(stable_dt(fs, sc) == doctest::Approx(2.0 * dt).epsilon(1e-12));
}

TEST_CASE("near-vacuum core does not control the vortex time step") {
  const VortexParams vp;
  Mesh mesh;
  mesh.dim = 2;
  mesh.n = {10, 10};
  mesh.box.lo = Coord::Constant(2, vp.box_lo);
  mesh.box.hi = Coord::Constant(2, vp.box_hi);
  SolverConfig sc;
  sc.degree = 4;
  sc.gas = gp;
  LimiterConfig lc;
  sc.limiter = lc;
  sc.constraints = {{ConstraintKind::Density, gp.rho_min},
                    {ConstraintKind::Pressure, gp.p_min}};
  FieldState fs = init_field(
      mesh, 4, [&](const Coord& x) { return vortex_ic(x, vp, gp); });
  limit_field(fs, sc);
  const double dt = stable_dt(fs, sc);
  // Far-field wave speed is ~2.5; the vortex peak adds swirl. The bound
  // below fails if the near-vacuum core (sound speed -> 0) were allowed to
  // inflate the wave-speed estimate.
  const double h = 2.0;
  CHECK(dt >= sc.cfl * h / (9.0 * 8.0));
  CHECK(dt <= sc.cfl * h / (9.0 * 2.0));
}

TEST_CASE("blowup is reported with an element index") {
  SolverConfig sc;
  sc.degree = 1;
  sc.gas = gp;
  FieldState fs =
      init_field(unit_mesh_1d(4), 1, [&](const Coord&) { return uniform_state(); });
  fs.elements[2].coeffs(0, 2) = 1e308;  // finite, but the update overflows
  try {
    step(fs, sc, 1.0);
    FAIL("expected SolverBlowupError");
  } catch (const SolverBlowupError& ex) {
    CHECK(ex.element_index >= 0);
  }
}

TEST_CASE("advance reaches t_final exactly") {
  SolverConfig sc;
  sc.degree = 2;
  sc.gas = gp;
  sc.t_final = 0.037;
  FieldState fs =
      init_field(unit_mesh_1d(4), 2, [&](const Coord&) { return uniform_state(); });
  const FieldState out = advance(fs, sc);
  CHECK(out.time == doctest::Approx(0.037).epsilon(1e-14));
}

TEST_CASE("conserved totals on a uniform field") {
  FieldState fs =
      init_field(unit_mesh_1d(7), 2, [&](const Coord&) { return uniform_state(); });
  const StateVec totals = conserved_totals(fs);
  const StateVec expect = to_state_vec(uniform_state());
  CHECK((totals - expect).cwiseAbs().maxCoeff() <= 1e-13);
}
