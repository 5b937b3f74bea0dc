// SPDX-License-Identifier: Apache-2.0

#include "cbp/solver.hpp"

#include <cmath>
#include <string>

namespace cbp {

BoxGeom Mesh::element_box(int i, int j) const {
  BoxGeom g;
  g.lo.resize(dim);
  g.hi.resize(dim);
  const int idx[2] = {i, j};
  for (int a = 0; a < dim; ++a) {
    const double h = box.extent(a) / n[a];
    g.lo[a] = box.lo[a] + idx[a] * h;
    g.hi[a] = box.lo[a] + (idx[a] + 1) * h;
  }
  return g;
}

StateVec riemann_rusanov(const ConservedState& u_left,
                         const ConservedState& u_right, const SpatialVec& normal,
                         const GasParams& gp) {
  if (!admissible(u_left) || !admissible(u_right)) {
    throw DegenerateStateError(
        "riemann_rusanov: inadmissible interface state (limiter failure?)");
  }
  const double lam =
      std::max(max_wave_speed(u_left, gp), max_wave_speed(u_right, gp));
  return 0.5 * (flux_dot_n(u_left, normal, gp) +
                flux_dot_n(u_right, normal, gp)) -
         0.5 * lam * (to_state_vec(u_right) - to_state_vec(u_left));
}

FieldState init_field(const Mesh& mesh, int degree,
                      const std::function<ConservedState(const Coord&)>& ic) {
  const ElementBasis& basis = element_basis(degree, mesh.dim);
  FieldState fs;
  fs.mesh = mesh;
  fs.degree = degree;
  fs.elements.resize(mesh.n_elements());
  for (int j = 0; j < (mesh.dim == 2 ? mesh.n[1] : 1); ++j) {
    for (int i = 0; i < mesh.n[0]; ++i) {
      ElementSolution& e = fs.elements[mesh.index(i, j)];
      e.degree = degree;
      e.dim = mesh.dim;
      e.geom = mesh.element_box(i, j);
      e.coeffs.resize(basis.n_nodes, mesh.dim + 2);
      for (int k = 0; k < basis.n_nodes; ++k) {
        const Coord ref = basis.node_coords.row(k).transpose();
        e.coeffs.row(k) =
            to_state_vec(ic(e.geom.to_physical(ref))).transpose();
      }
    }
  }
  return fs;
}

namespace {

// Flux values at a block of states: rows of `states` are [rho, m.., E];
// writes one (n x nvar) matrix per direction.
void flux_block(const Eigen::MatrixXd& states, int dim, const GasParams& gp,
                std::array<Eigen::MatrixXd, 2>& F) {
  const int n = static_cast<int>(states.rows());
  const int nvar = dim + 2;
  for (int a = 0; a < dim; ++a) F[a].resize(n, nvar);
  for (int q = 0; q < n; ++q) {
    const double rho = states(q, 0);
    if (rho == 0.0) {
      throw DegenerateStateError("rhs: zero density at quadrature point");
    }
    const double E = states(q, dim + 1);
    double msq = 0.0;
    for (int a = 0; a < dim; ++a) msq += states(q, 1 + a) * states(q, 1 + a);
    const double P = (gp.gamma - 1.0) * (E - 0.5 * msq / rho);
    for (int a = 0; a < dim; ++a) {
      const double mn = states(q, 1 + a);
      const double vn = mn / rho;
      F[a](q, 0) = mn;
      for (int i = 0; i < dim; ++i) {
        F[a](q, 1 + i) = states(q, 1 + i) * vn + (i == a ? P : 0.0);
      }
      F[a](q, dim + 1) = (E + P) * vn;
    }
  }
}

}  // namespace

std::vector<Eigen::MatrixXd> rhs(const FieldState& fs, const SolverConfig& cfg) {
  const Mesh& mesh = fs.mesh;
  const int dim = mesh.dim;
  const int nvar = dim + 2;
  const ElementBasis& basis = element_basis(fs.degree, dim);
  const int n_el = mesh.n_elements();
  const int nfq = static_cast<int>(basis.faces[0].weights.size());

  std::vector<Eigen::MatrixXd> residual(n_el);
  std::array<Eigen::MatrixXd, 2> F;

  // Volume terms.
  for (int k = 0; k < n_el; ++k) {
    const ElementSolution& e = fs.elements[k];
    const Eigen::MatrixXd quad_states = basis.vol_interp * e.coeffs;
    flux_block(quad_states, dim, cfg.gas, F);
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(basis.n_nodes, nvar);
    for (int a = 0; a < dim; ++a) {
      r.noalias() += basis.vol_deriv[a].transpose() *
                     (basis.vol_quad.weights.asDiagonal() * F[a]) /
                     e.geom.extent(a);
    }
    residual[k] = std::move(r);
  }

  // Face traces: [axis*2 + side] per element.
  std::vector<std::array<Eigen::MatrixXd, 4>> traces(n_el);
  for (int k = 0; k < n_el; ++k) {
    for (std::size_t f = 0; f < basis.faces.size(); ++f) {
      traces[k][f] = basis.faces[f].interp * fs.elements[k].coeffs;
    }
  }

  // Interface terms, assembled once per face (periodic wrap). The interface
  // "i" along an axis couples the high face of element i-1 with the low face
  // of element i.
  SpatialVec normal(dim);
  Eigen::MatrixXd fhat(nfq, nvar);
  for (int axis = 0; axis < dim; ++axis) {
    normal.setZero();
    normal[axis] = 1.0;
    const int n_axis = mesh.n[axis];
    const int n_other = (dim == 2) ? mesh.n[1 - axis] : 1;
    for (int other = 0; other < n_other; ++other) {
      for (int i = 0; i < n_axis; ++i) {
        const int i_prev = (i + n_axis - 1) % n_axis;
        int kL, kR;
        if (dim == 1) {
          kL = i_prev;
          kR = i;
        } else if (axis == 0) {
          kL = mesh.index(i_prev, other);
          kR = mesh.index(i, other);
        } else {
          kL = mesh.index(other, i_prev);
          kR = mesh.index(other, i);
        }
        const Eigen::MatrixXd& trL = traces[kL][axis * 2 + 1];
        const Eigen::MatrixXd& trR = traces[kR][axis * 2 + 0];
        for (int q = 0; q < nfq; ++q) {
          fhat.row(q) =
              riemann_rusanov(
                  from_state_vec(StateVec(trL.row(q).transpose())),
                  from_state_vec(StateVec(trR.row(q).transpose())), normal,
                  cfg.gas)
                  .transpose();
        }
        const double h = fs.elements[kL].geom.extent(axis);
        const ElementBasis::FaceOps& faceL = basis.faces[axis * 2 + 1];
        const ElementBasis::FaceOps& faceR = basis.faces[axis * 2 + 0];
        const Eigen::MatrixXd weighted = faceL.weights.asDiagonal() * fhat;
        residual[kL].noalias() -= faceL.interp.transpose() * weighted / h;
        residual[kR].noalias() += faceR.interp.transpose() * weighted / h;
      }
    }
  }

  for (int k = 0; k < n_el; ++k) {
    residual[k] = basis.mass_inv * residual[k];
  }
  return residual;
}

void limit_field(FieldState& fs, const SolverConfig& cfg) {
  if (!cfg.limiter) return;
  for (auto& e : fs.elements) {
    auto [limited, results] = limit_element(e, cfg.constraints, *cfg.limiter,
                                            cfg.gas);
    e.coeffs = std::move(limited.coeffs);
  }
}

namespace {

void check_finite(const FieldState& fs) {
  for (std::size_t k = 0; k < fs.elements.size(); ++k) {
    if (!fs.elements[k].coeffs.allFinite()) {
      throw SolverBlowupError(
          "non-finite state in element " + std::to_string(k) + " at t = " +
              std::to_string(fs.time),
          static_cast<int>(k));
    }
  }
}

}  // namespace

FieldState step(const FieldState& fs, const SolverConfig& cfg, double dt,
                const StageCallback& on_stage) {
  if (!(dt > 0.0)) throw ContractError("step: dt must be positive");
  const int n_el = fs.mesh.n_elements();

  // Stage 1: u1 = u + dt L(u).
  FieldState s1 = fs;
  {
    const auto L = rhs(fs, cfg);
    for (int k = 0; k < n_el; ++k) s1.elements[k].coeffs += dt * L[k];
    s1.time = fs.time + dt;
  }
  check_finite(s1);
  limit_field(s1, cfg);
  if (on_stage) on_stage(s1, 1);

  // Stage 2: u2 = 3/4 u + 1/4 (u1 + dt L(u1)).
  FieldState s2 = s1;
  {
    const auto L = rhs(s1, cfg);
    for (int k = 0; k < n_el; ++k) {
      s2.elements[k].coeffs = 0.75 * fs.elements[k].coeffs +
                              0.25 * (s1.elements[k].coeffs + dt * L[k]);
    }
    s2.time = fs.time + 0.5 * dt;
  }
  check_finite(s2);
  limit_field(s2, cfg);
  if (on_stage) on_stage(s2, 2);

  // Stage 3: u^{n+1} = 1/3 u + 2/3 (u2 + dt L(u2)).
  FieldState s3 = s2;
  {
    const auto L = rhs(s2, cfg);
    for (int k = 0; k < n_el; ++k) {
      s3.elements[k].coeffs =
          (1.0 / 3.0) * fs.elements[k].coeffs +
          (2.0 / 3.0) * (s2.elements[k].coeffs + dt * L[k]);
    }
    s3.time = fs.time + dt;
  }
  check_finite(s3);
  limit_field(s3, cfg);
  if (on_stage) on_stage(s3, 3);
  return s3;
}

double stable_dt(const FieldState& fs, const SolverConfig& cfg) {
  const ElementBasis& basis = element_basis(fs.degree, fs.mesh.dim);
  const double factor = 2.0 * fs.degree + 1.0;
  double dt = std::numeric_limits<double>::infinity();
  for (const auto& e : fs.elements) {
    const Eigen::MatrixXd quad_states = basis.vol_interp * e.coeffs;
    double lam = 0.0;
    for (int q = 0; q < quad_states.rows(); ++q) {
      lam = std::max(lam, max_wave_speed(from_state_vec(StateVec(
                              quad_states.row(q).transpose())),
                          cfg.gas));
    }
    double h = e.geom.extent(0);
    for (int a = 1; a < e.dim; ++a) h = std::min(h, e.geom.extent(a));
    if (lam > 0.0) dt = std::min(dt, cfg.cfl * h / (factor * lam));
  }
  return dt;
}

FieldState advance(FieldState fs, const SolverConfig& cfg,
                   const StageCallback& on_stage) {
  const double t_tol = 1e-12 * std::max(1.0, std::abs(cfg.t_final));
  if (cfg.limiter && fs.time < cfg.t_final - t_tol) limit_field(fs, cfg);
  while (cfg.t_final - fs.time > t_tol) {
    double dt = stable_dt(fs, cfg);
    if (!(dt > 0.0) || !std::isfinite(dt)) {
      throw SolverBlowupError("advance: no positive stable time step", -1);
    }
    dt = std::min(dt, cfg.t_final - fs.time);
    fs = step(fs, cfg, dt, on_stage);
  }
  return fs;
}

StateVec conserved_totals(const FieldState& fs) {
  StateVec total = StateVec::Zero(fs.mesh.dim + 2);
  for (const auto& e : fs.elements) {
    total += to_state_vec(element_mean(e)) * e.geom.volume();
  }
  return total;
}

}  // namespace cbp
