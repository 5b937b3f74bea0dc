// SPDX-License-Identifier: Apache-2.0
//
// Conserved/primitive state algebra, fluxes, and the constraint functionals
// g1 (density), g2 (pressure), g3 (minimum specific entropy) for the
// compressible Euler equations in d = 1 or 2 dimensions.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <optional>

#include "cbp/errors.hpp"

namespace cbp {

/// Fixed-capacity spatial vector (d <= 2), sized at runtime.
template <typename Scalar>
using SpatialVecT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, Eigen::ColMajor, 2, 1>;

/// Flat conserved-variable vector [rho, m_1..m_d, E], d + 2 entries.
template <typename Scalar>
using StateVecT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, Eigen::ColMajor, 4, 1>;

/// (d+2) x d flux tensor; column j is the flux in direction j.
template <typename Scalar>
using FluxMatT =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 4, 2>;

using SpatialVec = SpatialVecT<double>;
using StateVec = StateVecT<double>;
using FluxMat = FluxMatT<double>;

/// Calorically perfect gas parameters together with the constraint floors.
struct GasParams {
  double gamma = 1.4;
  double rho_min = 1.0e-11;
  double p_min = 1.0e-11;
  std::optional<double> sigma_min{};  ///< minimum specific entropy, if enforced
};

template <typename Scalar>
struct ConservedStateT {
  Scalar rho{};
  SpatialVecT<Scalar> m;
  Scalar E{};

  int dim() const { return static_cast<int>(m.size()); }
};

template <typename Scalar>
struct PrimitiveStateT {
  Scalar rho{};
  SpatialVecT<Scalar> v;
  Scalar P{};

  int dim() const { return static_cast<int>(v.size()); }
};

using ConservedState = ConservedStateT<double>;
using PrimitiveState = PrimitiveStateT<double>;

enum class ConstraintKind { Density, Pressure, MinEntropy };

/// Which constraint functional to enforce, with its floor value.
struct ConstraintSpec {
  ConstraintKind kind = ConstraintKind::Density;
  double bound = 0.0;
};

template <typename Scalar>
StateVecT<Scalar> to_state_vec(const ConservedStateT<Scalar>& u) {
  const int d = u.dim();
  StateVecT<Scalar> v(d + 2);
  v[0] = u.rho;
  v.segment(1, d) = u.m;
  v[d + 1] = u.E;
  return v;
}

template <typename Derived>
ConservedStateT<typename Derived::Scalar> from_state_vec(
    const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  const int d = static_cast<int>(v.size()) - 2;
  ConservedStateT<Scalar> u;
  u.rho = v[0];
  u.m = v.segment(1, d);
  u.E = v[d + 1];
  return u;
}

/// P = (gamma - 1)(E - |m|^2 / (2 rho)). May be negative for inadmissible
/// states; only rho = 0 is an error.
template <typename Scalar>
Scalar pressure(const ConservedStateT<Scalar>& u, const GasParams& gp) {
  if (u.rho == Scalar(0)) {
    throw DegenerateStateError("pressure: zero density");
  }
  return (gp.gamma - 1.0) * (u.E - Scalar(0.5) * u.m.squaredNorm() / u.rho);
}

/// Specific physical entropy sigma = P rho^(-gamma). Requires rho > 0.
template <typename Scalar>
Scalar specific_entropy(const ConservedStateT<Scalar>& u, const GasParams& gp) {
  if (!(u.rho > Scalar(0))) {
    throw DegenerateStateError("specific_entropy: nonpositive density");
  }
  using std::pow;
  return pressure(u, gp) * pow(u.rho, Scalar(-gp.gamma));
}

/// Signed constraint value; >= 0 means the state satisfies the bound.
template <typename Scalar>
Scalar constraint_g(const ConstraintSpec& spec, const ConservedStateT<Scalar>& u,
                    const GasParams& gp) {
  switch (spec.kind) {
    case ConstraintKind::Density:
      return u.rho - spec.bound;
    case ConstraintKind::Pressure:
      return pressure(u, gp) - spec.bound;
    case ConstraintKind::MinEntropy:
      return specific_entropy(u, gp) - spec.bound;
  }
  throw ContractError("constraint_g: bad constraint kind");
}

/// Full flux tensor F(u); column j is [m_j; m v_j + P e_j; (E + P) v_j].
template <typename Scalar>
FluxMatT<Scalar> flux(const ConservedStateT<Scalar>& u, const GasParams& gp) {
  if (u.rho == Scalar(0)) {
    throw DegenerateStateError("flux: zero density");
  }
  const int d = u.dim();
  const SpatialVecT<Scalar> v = u.m / u.rho;
  const Scalar P = pressure(u, gp);
  FluxMatT<Scalar> F(d + 2, d);
  for (int j = 0; j < d; ++j) {
    F(0, j) = u.m[j];
    for (int i = 0; i < d; ++i) {
      F(1 + i, j) = u.m[i] * v[j] + (i == j ? P : Scalar(0));
    }
    F(d + 1, j) = (u.E + P) * v[j];
  }
  return F;
}

/// Directional flux F(u) . n without forming the full tensor.
template <typename Scalar>
StateVecT<Scalar> flux_dot_n(const ConservedStateT<Scalar>& u,
                             const SpatialVecT<Scalar>& n, const GasParams& gp) {
  if (u.rho == Scalar(0)) {
    throw DegenerateStateError("flux_dot_n: zero density");
  }
  const int d = u.dim();
  const Scalar P = pressure(u, gp);
  const Scalar mn = u.m.dot(n);
  const Scalar vn = mn / u.rho;
  StateVecT<Scalar> F(d + 2);
  F[0] = mn;
  F.segment(1, d) = u.m * vn + P * n;
  F[d + 1] = (u.E + P) * vn;
  return F;
}

template <typename Scalar>
ConservedStateT<Scalar> prim_to_cons(const PrimitiveStateT<Scalar>& p,
                                     const GasParams& gp) {
  ConservedStateT<Scalar> u;
  u.rho = p.rho;
  u.m = p.rho * p.v;
  u.E = p.P / (gp.gamma - 1.0) + Scalar(0.5) * p.rho * p.v.squaredNorm();
  return u;
}

template <typename Scalar>
PrimitiveStateT<Scalar> cons_to_prim(const ConservedStateT<Scalar>& u,
                                     const GasParams& gp) {
  if (u.rho == Scalar(0)) {
    throw DegenerateStateError("cons_to_prim: zero density");
  }
  PrimitiveStateT<Scalar> p;
  p.rho = u.rho;
  p.v = u.m / u.rho;
  p.P = pressure(u, gp);
  return p;
}

/// True when rho > 0 and the internal energy rho E - |m|^2/2 is positive.
template <typename Scalar>
bool admissible(const ConservedStateT<Scalar>& u) {
  return u.rho > Scalar(0) &&
         u.rho * u.E - Scalar(0.5) * u.m.squaredNorm() > Scalar(0);
}

/// |v| + sqrt(gamma P / rho). Requires rho > 0 and P >= 0.
template <typename Scalar>
Scalar max_wave_speed(const ConservedStateT<Scalar>& u, const GasParams& gp) {
  if (!(u.rho > Scalar(0))) {
    throw DegenerateStateError("max_wave_speed: nonpositive density");
  }
  const Scalar P = pressure(u, gp);
  if (!(P >= Scalar(0))) {
    throw DegenerateStateError("max_wave_speed: negative pressure");
  }
  using std::sqrt;
  return u.m.norm() / u.rho + sqrt(gp.gamma * P / u.rho);
}

}  // namespace cbp
