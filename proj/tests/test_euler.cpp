// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "cbp/euler.hpp"

using namespace cbp;

namespace {

ConservedState make1d(double rho, double m, double E) {
  ConservedState u;
  u.rho = rho;
  u.m = SpatialVec::Constant(1, m);
  u.E = E;
  return u;
}

const GasParams gp{};

}  // namespace

TEST_CASE("pressure") {
  CHECK(pressure(make1d(1.0, 0.0, 1.0 / 0.4), gp) == doctest::Approx(1.0));
  // Right state of the static discontinuity: (rho,u,P) = (3,3,1).
  CHECK(pressure(make1d(3.0, 9.0, 16.0), gp) == doctest::Approx(1.0));
  CHECK(pressure(make1d(1.0, 1.0, 0.3), gp) == doctest::Approx(-0.08));
  CHECK_THROWS_AS(pressure(make1d(0.0, 1.0, 1.0), gp), DegenerateStateError);
}

TEST_CASE("specific_entropy") {
  CHECK(specific_entropy(make1d(1.0, 0.0, 2.5), gp) == doctest::Approx(1.0));
  CHECK(specific_entropy(make1d(3.0, 9.0, 16.0), gp) ==
        doctest::Approx(std::pow(3.0, -1.4)));
  CHECK(specific_entropy(make1d(1.0, 1.0, 0.3), gp) == doctest::Approx(-0.08));
  CHECK_THROWS_AS(specific_entropy(make1d(-1.0, 0.0, 1.0), gp),
                  DegenerateStateError);
  CHECK_THROWS_AS(specific_entropy(make1d(0.0, 0.0, 1.0), gp),
                  DegenerateStateError);
}

TEST_CASE("constraint_g") {
  CHECK(constraint_g({ConstraintKind::Density, 0.0}, make1d(2.0, 0.0, 1.0), gp) ==
        doctest::Approx(2.0));
  CHECK(constraint_g({ConstraintKind::Pressure, 0.0}, make1d(1.0, 1.0, 0.3), gp) ==
        doctest::Approx(-0.08));
  // Left state of the static discontinuity has sigma ~ 2e-11 << 0.1.
  PrimitiveState left;
  left.rho = 1.0;
  left.v = SpatialVec::Constant(1, 1.0);
  left.P = 2e-11;
  const double g = constraint_g({ConstraintKind::MinEntropy, 0.1},
                                prim_to_cons(left, gp), gp);
  CHECK(g == doctest::Approx(-0.1).epsilon(1e-6));
  CHECK_THROWS_AS(constraint_g({ConstraintKind::MinEntropy, 0.1},
                               make1d(-1.0, 0.0, 1.0), gp),
                  DegenerateStateError);
}

TEST_CASE("flux") {
  const FluxMat f0 = flux(make1d(1.0, 0.0, 2.5), gp);
  CHECK(f0(0, 0) == doctest::Approx(0.0));
  CHECK(f0(1, 0) == doctest::Approx(1.0));
  CHECK(f0(2, 0) == doctest::Approx(0.0));

  const FluxMat f1 = flux(make1d(3.0, 9.0, 16.0), gp);
  CHECK(f1(0, 0) == doctest::Approx(9.0));
  CHECK(f1(1, 0) == doctest::Approx(28.0));
  CHECK(f1(2, 0) == doctest::Approx(51.0));

  ConservedState u2;
  u2.rho = 1.0;
  u2.m.resize(2);
  u2.m << 0.0, 1.0;
  u2.E = 1.0 / 0.4 + 0.5;
  const FluxMat f2 = flux(u2, gp);
  CHECK(f2(0, 1) == doctest::Approx(1.0));
  CHECK(f2(1, 1) == doctest::Approx(0.0));
  CHECK(f2(2, 1) == doctest::Approx(2.0));
  CHECK(f2(3, 1) == doctest::Approx(1.0 / 0.4 + 1.5));

  CHECK_THROWS_AS(flux(make1d(0.0, 1.0, 1.0), gp), DegenerateStateError);
}

TEST_CASE("flux_dot_n matches flux columns") {
  ConservedState u;
  u.rho = 1.7;
  u.m.resize(2);
  u.m << 0.4, -0.9;
  u.E = 3.1;
  SpatialVec n(2);
  n << 0.6, 0.8;
  const FluxMat F = flux(u, gp);
  const StateVec fn = flux_dot_n(u, n, gp);
  for (int i = 0; i < 4; ++i) {
    CHECK(fn[i] == doctest::Approx(F(i, 0) * n[0] + F(i, 1) * n[1]));
  }
}

TEST_CASE("prim_to_cons and cons_to_prim") {
  PrimitiveState p;
  p.rho = 1.0;
  p.v = SpatialVec::Constant(1, 0.0);
  p.P = 1.0;
  const ConservedState u = prim_to_cons(p, gp);
  CHECK(u.rho == doctest::Approx(1.0));
  CHECK(u.m[0] == doctest::Approx(0.0));
  CHECK(u.E == doctest::Approx(2.5));

  PrimitiveState left;
  left.rho = 1.0;
  left.v = SpatialVec::Constant(1, 1.0);
  left.P = 2e-11;
  const ConservedState ul = prim_to_cons(left, gp);
  CHECK(ul.m[0] == doctest::Approx(1.0));
  CHECK(ul.E == doctest::Approx(0.5 + 5e-11));

  const PrimitiveState back = cons_to_prim(ul, gp);
  CHECK(back.P == doctest::Approx(2e-11).epsilon(1e-4));

  ConservedState degenerate = make1d(0.0, 0.0, 1.0);
  CHECK_THROWS_AS(cons_to_prim(degenerate, gp), DegenerateStateError);
}

TEST_CASE("max_wave_speed") {
  CHECK(max_wave_speed(make1d(1.0, 0.0, 2.5), gp) ==
        doctest::Approx(std::sqrt(1.4)));
  CHECK(max_wave_speed(make1d(1.0, 1.0, 3.0), gp) ==
        doctest::Approx(1.0 + std::sqrt(1.4)));
  // Vacuum limit: sound speed vanishes.
  CHECK(max_wave_speed(make1d(1.0, 1.0, 0.5), gp) == doctest::Approx(1.0));
  CHECK_THROWS_AS(max_wave_speed(make1d(1.0, 1.0, 0.3), gp),
                  DegenerateStateError);
  CHECK_THROWS_AS(max_wave_speed(make1d(-1.0, 0.0, 1.0), gp),
                  DegenerateStateError);
}

TEST_CASE("admissible") {
  CHECK(admissible(make1d(1.0, 0.0, 1.0)));
  CHECK_FALSE(admissible(make1d(1.0, 1.0, 0.3)));
  CHECK_FALSE(admissible(make1d(-1.0, 0.0, 1.0)));
}

TEST_CASE("state vector round trip") {
  ConservedState u;
  u.rho = 2.0;
  u.m.resize(2);
  u.m << 3.0, -1.0;
  u.E = 7.0;
  const StateVec v = to_state_vec(u);
  REQUIRE(v.size() == 4);
  const ConservedState back = from_state_vec(v);
  CHECK(back.rho == u.rho);
  CHECK(back.m[0] == u.m[0]);
  CHECK(back.m[1] == u.m[1]);
  CHECK(back.E == u.E);
}
