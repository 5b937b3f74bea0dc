// SPDX-License-Identifier: Apache-2.0

#include "cbp/element.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace cbp {

namespace {

constexpr double kEvalClamp = 1e-12;

// Legendre P_n(x) and P'_n(x) on [-1,1] via the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  // P'_n from P_n and P_{n-1}; valid away from x = +-1.
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

}  // namespace

Eigen::VectorXd gauss_lobatto_nodes(int p) {
  if (p < 1) {
    throw UnsupportedError("gauss_lobatto_nodes: degree must be >= 1");
  }
  Eigen::VectorXd x(p + 1);  // nodes on [-1,1], ascending
  x[0] = -1.0;
  x[p] = 1.0;
  // Interior nodes are the roots of P'_p; Newton from Chebyshev-Lobatto
  // estimates, with P'' obtained from the Legendre ODE.
  for (int i = 1; i < p; ++i) {
    double t = -std::cos(M_PI * i / p);
    for (int it = 0; it < 100; ++it) {
      const auto [P, dP] = legendre(p, t);
      const double ddP = (2.0 * t * dP - p * (p + 1.0) * P) / (1.0 - t * t);
      const double delta = dP / ddP;
      t -= delta;
      if (std::abs(delta) < 1e-15) break;
    }
    x[i] = t;
  }
  // Enforce symmetry exactly, then map [-1,1] -> [0,1].
  Eigen::VectorXd out(p + 1);
  for (int i = 0; i <= p; ++i) {
    const double sym = 0.5 * (x[i] - x[p - i]);
    out[i] = 0.5 * (sym + 1.0);
  }
  return out;
}

QuadratureRule gauss_legendre_rule(int n, int dim) {
  if (n < 1) {
    throw UnsupportedError("gauss_legendre_rule: need n >= 1 points");
  }
  if (dim < 1 || dim > 2) {
    throw UnsupportedError("gauss_legendre_rule: dim must be 1 or 2");
  }
  Eigen::VectorXd x(n), w(n);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dP = 1.0;
    for (int it = 0; it < 100; ++it) {
      const auto [P, dPk] = legendre(n, t);
      dP = dPk;
      const double delta = P / dP;
      t -= delta;
      if (std::abs(delta) < 1e-15) break;
    }
    // Map weight 2/((1-t^2) P'^2) from [-1,1] to [0,1].
    x[n - 1 - i] = 0.5 * (t + 1.0);
    w[n - 1 - i] = 1.0 / ((1.0 - t * t) * dP * dP);
  }

  QuadratureRule rule;
  if (dim == 1) {
    rule.points = x;
    rule.weights = w;
  } else {
    rule.points.resize(n * n, 2);
    rule.weights.resize(n * n);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const int k = i + n * j;
        rule.points(k, 0) = x[i];
        rule.points(k, 1) = x[j];
        rule.weights[k] = w[i] * w[j];
      }
    }
  }
  return rule;
}

void check_element(const ElementSolution& e) {
  if (e.dim < 1 || e.dim > 2) {
    throw UnsupportedError("element: dim must be 1 or 2");
  }
  if (e.degree < 1) {
    throw UnsupportedError("element: degree must be >= 1");
  }
  int n = 1;
  for (int a = 0; a < e.dim; ++a) n *= e.degree + 1;
  if (e.coeffs.rows() != n || e.coeffs.cols() != e.dim + 2) {
    throw ContractError("element: coefficient block has the wrong shape");
  }
  if (e.geom.dim() != e.dim) {
    throw ContractError("element: geometry dimension mismatch");
  }
  for (int a = 0; a < e.dim; ++a) {
    if (!(e.geom.extent(a) > 0.0)) {
      throw ContractError("element: nonpositive geometry extent");
    }
  }
}

Eigen::RowVectorXd ElementBasis::basis_row(const Coord& x) const {
  const int n1 = degree + 1;
  Eigen::RowVectorXd row(n_nodes);
  double tx[2] = {2.0 * x[0] - 1.0, 0.0};
  if (dim == 2) tx[1] = 2.0 * x[1] - 1.0;
  Eigen::VectorXd px(n1), py(n1);
  px[0] = 1.0;
  for (int a = 1; a < n1; ++a) px[a] = px[a - 1] * tx[0];
  if (dim == 1) {
    for (int a = 0; a < n1; ++a) row[a] = px[a];
    return row;
  }
  py[0] = 1.0;
  for (int b = 1; b < n1; ++b) py[b] = py[b - 1] * tx[1];
  for (int b = 0; b < n1; ++b) {
    for (int a = 0; a < n1; ++a) row[a + n1 * b] = px[a] * py[b];
  }
  return row;
}

Eigen::RowVectorXd ElementBasis::basis_deriv_row(const Coord& x, int axis) const {
  const int n1 = degree + 1;
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(n_nodes);
  double tx[2] = {2.0 * x[0] - 1.0, 0.0};
  if (dim == 2) tx[1] = 2.0 * x[1] - 1.0;
  // d/dx t^a = 2 a t^(a-1) with t = 2x - 1.
  Eigen::VectorXd vx(n1), vy(n1), dx(n1), dy(n1);
  vx[0] = 1.0;
  for (int a = 1; a < n1; ++a) vx[a] = vx[a - 1] * tx[0];
  dx[0] = 0.0;
  for (int a = 1; a < n1; ++a) dx[a] = 2.0 * a * vx[a - 1];
  if (dim == 1) {
    for (int a = 0; a < n1; ++a) row[a] = dx[a];
    return row;
  }
  vy[0] = 1.0;
  for (int b = 1; b < n1; ++b) vy[b] = vy[b - 1] * tx[1];
  dy[0] = 0.0;
  for (int b = 1; b < n1; ++b) dy[b] = 2.0 * b * vy[b - 1];
  for (int b = 0; b < n1; ++b) {
    for (int a = 0; a < n1; ++a) {
      row[a + n1 * b] = (axis == 0) ? dx[a] * vy[b] : vx[a] * dy[b];
    }
  }
  return row;
}

namespace {

std::unique_ptr<ElementBasis> build_basis(int degree, int dim) {
  if (degree < 1) throw UnsupportedError("element_basis: degree must be >= 1");
  if (dim < 1 || dim > 2) throw UnsupportedError("element_basis: dim must be 1 or 2");

  auto basis = std::make_unique<ElementBasis>();
  ElementBasis& b = *basis;
  b.degree = degree;
  b.dim = dim;
  const int n1 = degree + 1;
  b.n_nodes = (dim == 1) ? n1 : n1 * n1;
  b.nodes1d = gauss_lobatto_nodes(degree);

  b.node_coords.resize(b.n_nodes, dim);
  for (int j = 0; j < (dim == 2 ? n1 : 1); ++j) {
    for (int i = 0; i < n1; ++i) {
      const int k = i + n1 * j;
      b.node_coords(k, 0) = b.nodes1d[i];
      if (dim == 2) b.node_coords(k, 1) = b.nodes1d[j];
    }
  }

  b.vandermonde.resize(b.n_nodes, b.n_nodes);
  for (int k = 0; k < b.n_nodes; ++k) {
    Coord x = b.node_coords.row(k).transpose();
    b.vandermonde.row(k) = b.basis_row(x);
  }
  b.modal_solver.compute(b.vandermonde);

  b.vol_quad = gauss_legendre_rule(n1, dim);
  const int nq = static_cast<int>(b.vol_quad.weights.size());
  b.vol_interp.resize(nq, b.n_nodes);
  for (int a = 0; a < dim; ++a) b.vol_deriv[a].resize(nq, b.n_nodes);
  // Lagrange values/derivatives at quadrature points via the modal route:
  // row(x) = basis_row(x) V^{-1}.
  Eigen::MatrixXd mono(nq, b.n_nodes);
  std::array<Eigen::MatrixXd, 2> dmono;
  for (int a = 0; a < dim; ++a) dmono[a].resize(nq, b.n_nodes);
  for (int q = 0; q < nq; ++q) {
    Coord x = b.vol_quad.points.row(q).transpose();
    mono.row(q) = b.basis_row(x);
    for (int a = 0; a < dim; ++a) dmono[a].row(q) = b.basis_deriv_row(x, a);
  }
  // X = mono V^{-1}  <=>  V^T X^T = mono^T.
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> vt(b.vandermonde.transpose());
  b.vol_interp = vt.solve(mono.transpose()).transpose();
  for (int a = 0; a < dim; ++a) {
    b.vol_deriv[a] = vt.solve(dmono[a].transpose()).transpose();
  }

  const Eigen::VectorXd& w = b.vol_quad.weights;
  Eigen::MatrixXd mass =
      b.vol_interp.transpose() * w.asDiagonal() * b.vol_interp;
  b.mass_inv = mass.llt().solve(
      Eigen::MatrixXd::Identity(b.n_nodes, b.n_nodes));
  b.mean_weights = b.vol_interp.transpose() * w;

  // Faces: one quadrature point set per face, matching the volume rule's
  // 1D points so traces of neighboring elements align point-by-point.
  const QuadratureRule line = gauss_legendre_rule(n1, 1);
  const int nfq = (dim == 1) ? 1 : n1;
  for (int axis = 0; axis < dim; ++axis) {
    for (int side = 0; side < 2; ++side) {
      ElementBasis::FaceOps f;
      f.axis = axis;
      f.side = side;
      f.points.resize(nfq, dim);
      f.weights.resize(nfq);
      for (int q = 0; q < nfq; ++q) {
        if (dim == 1) {
          f.points(q, 0) = static_cast<double>(side);
          f.weights[q] = 1.0;
        } else {
          f.points(q, axis) = static_cast<double>(side);
          f.points(q, 1 - axis) = line.points(q, 0);
          f.weights[q] = line.weights[q];
        }
      }
      Eigen::MatrixXd fmono(nfq, b.n_nodes);
      for (int q = 0; q < nfq; ++q) {
        Coord x = f.points.row(q).transpose();
        fmono.row(q) = b.basis_row(x);
      }
      f.interp = vt.solve(fmono.transpose()).transpose();
      b.faces.push_back(std::move(f));
    }
  }
  return basis;
}

}  // namespace

const ElementBasis& element_basis(int degree, int dim) {
  static std::mutex mtx;
  static std::map<std::pair<int, int>, std::unique_ptr<ElementBasis>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto& slot = cache[{degree, dim}];
  if (!slot) slot = build_basis(degree, dim);
  return *slot;
}

ModalForm nodal_to_modal(const ElementSolution& e) {
  check_element(e);
  const ElementBasis& b = element_basis(e.degree, e.dim);
  ModalForm mf;
  mf.degree = e.degree;
  mf.dim = e.dim;
  mf.coeffs = b.modal_solver.solve(e.coeffs);
  return mf;
}

StateVec eval_state_vec(const ModalForm& mf, const Coord& x) {
  const int n1 = mf.degree + 1;
  const int nv = mf.dim + 2;
  double t[2] = {0.0, 0.0};
  for (int a = 0; a < mf.dim; ++a) {
    const double xc = std::min(std::max(x[a], -kEvalClamp), 1.0 + kEvalClamp);
    t[a] = 2.0 * std::min(std::max(xc, 0.0), 1.0) - 1.0;
  }
  StateVec out(nv);
  for (int v = 0; v < nv; ++v) {
    if (mf.dim == 1) {
      double acc = 0.0;
      for (int a = n1 - 1; a >= 0; --a) acc = acc * t[0] + mf.coeffs(a, v);
      out[v] = acc;
    } else {
      double acc = 0.0;
      for (int bexp = n1 - 1; bexp >= 0; --bexp) {
        double inner = 0.0;
        for (int a = n1 - 1; a >= 0; --a) {
          inner = inner * t[0] + mf.coeffs(a + n1 * bexp, v);
        }
        acc = acc * t[1] + inner;
      }
      out[v] = acc;
    }
  }
  return out;
}

ConservedState eval_at(const ModalForm& mf, const Coord& x) {
  return from_state_vec(eval_state_vec(mf, x));
}

ConservedState element_mean(const ElementSolution& e) {
  check_element(e);
  const ElementBasis& b = element_basis(e.degree, e.dim);
  StateVec mean = (b.mean_weights.transpose() * e.coeffs).transpose();
  return from_state_vec(mean);
}

ConservedState node_state(const ElementSolution& e, int node) {
  return from_state_vec(StateVec(e.coeffs.row(node).transpose()));
}

void set_node_state(ElementSolution& e, int node, const ConservedState& u) {
  e.coeffs.row(node) = to_state_vec(u).transpose();
}

}  // namespace cbp
