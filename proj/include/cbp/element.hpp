// SPDX-License-Identifier: Apache-2.0
//
// Polynomial element machinery on the reference box [0,1]^d: Gauss-Lobatto
// solution nodes, Gauss-Legendre quadrature, nodal<->modal conversion,
// arbitrary-point evaluation, element means, and finite-difference
// derivatives of scalar fields over the reference coordinates.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <utility>

#include "cbp/errors.hpp"
#include "cbp/euler.hpp"

namespace cbp {

/// Reference or physical coordinate, d <= 2.
using Coord = SpatialVec;

/// Axis-aligned box in physical space.
struct BoxGeom {
  Coord lo;
  Coord hi;

  int dim() const { return static_cast<int>(lo.size()); }
  double extent(int axis) const { return hi[axis] - lo[axis]; }
  double volume() const {
    double v = 1.0;
    for (int a = 0; a < dim(); ++a) v *= extent(a);
    return v;
  }
  Coord to_physical(const Coord& ref) const {
    return lo.array() + ref.array() * (hi - lo).array();
  }
  Coord to_reference(const Coord& phys) const {
    return (phys - lo).array() / (hi - lo).array();
  }
};

/// Quadrature points (reference coordinates, one row per point) and weights.
/// Weights sum to the reference-box volume (= 1).
struct QuadratureRule {
  Eigen::MatrixXd points;   // n x d
  Eigen::VectorXd weights;  // n
};

/// Per-element polynomial solution: nodal conserved states at the
/// tensor-product Gauss-Lobatto nodes. coeffs is (p+1)^d x (d+2), one row
/// per node (flat index i + (p+1) j), one column per conserved variable.
struct ElementSolution {
  int degree = 1;
  int dim = 1;
  Eigen::MatrixXd coeffs;
  BoxGeom geom;

  int n_nodes() const { return static_cast<int>(coeffs.rows()); }
};

/// Monomial-form representation of an element solution for evaluation at
/// arbitrary reference points. The basis is the tensor product of centered,
/// scaled monomials t^a with t = 2x - 1, flat index a + (p+1) b.
struct ModalForm {
  int degree = 1;
  int dim = 1;
  Eigen::MatrixXd coeffs;
};

/// Throws UnsupportedError / ContractError when the element shape or
/// geometry invariants are violated.
void check_element(const ElementSolution& e);

/// p+1 Gauss-Lobatto nodes on [0,1], sorted, endpoints included,
/// symmetric about 0.5. Requires p >= 1.
Eigen::VectorXd gauss_lobatto_nodes(int p);

/// Tensor-product Gauss-Legendre rule with n points per direction on
/// [0,1]^dim; exact for 1D polynomials through degree 2n-1.
QuadratureRule gauss_legendre_rule(int n, int dim);

ModalForm nodal_to_modal(const ElementSolution& e);

/// Evaluate the modal form at reference coordinates x (clamped to the
/// reference box with tolerance 1e-12).
ConservedState eval_at(const ModalForm& mf, const Coord& x);

/// Evaluate as a flat state vector; same semantics as eval_at.
StateVec eval_state_vec(const ModalForm& mf, const Coord& x);

/// Quadrature mean of the element solution (exact for polynomial data).
ConservedState element_mean(const ElementSolution& e);

ConservedState node_state(const ElementSolution& e, int node);
void set_node_state(ElementSolution& e, int node, const ConservedState& u);

/// Cached evaluation operators for a (degree, dim) pair. All matrices act on
/// nodal coefficient blocks of shape (p+1)^d x (d+2).
class ElementBasis {
 public:
  int degree = 1;
  int dim = 1;
  int n_nodes = 2;

  Eigen::VectorXd nodes1d;      // Gauss-Lobatto nodes on [0,1]
  Eigen::MatrixXd node_coords;  // n_nodes x dim

  QuadratureRule vol_quad;                    // (p+1)^d points
  Eigen::MatrixXd vol_interp;                 // n_q x n_nodes
  std::array<Eigen::MatrixXd, 2> vol_deriv;   // reference-gradient interp

  struct FaceOps {
    int axis = 0;
    int side = 0;              // 0: low face, 1: high face
    Eigen::MatrixXd points;    // n_fq x dim, on the face
    Eigen::VectorXd weights;   // reference face measure (= 1) total
    Eigen::MatrixXd interp;    // n_fq x n_nodes
  };
  std::vector<FaceOps> faces;  // 2*dim faces, ordered (axis, side)

  Eigen::MatrixXd mass_inv;      // reference mass inverse, n_nodes x n_nodes
  Eigen::VectorXd mean_weights;  // mean = mean_weights^T coeffs

  Eigen::MatrixXd vandermonde;   // monomials at nodes
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> modal_solver;

  /// Values of all (p+1)^d modal basis functions at x (no clamping).
  Eigen::RowVectorXd basis_row(const Coord& x) const;
  /// d/dx_axis of the modal basis at x, in reference coordinates.
  Eigen::RowVectorXd basis_deriv_row(const Coord& x, int axis) const;
};

/// Shared immutable basis for (degree, dim); built once, thread-safe.
const ElementBasis& element_basis(int degree, int dim);

struct GradHess {
  Coord grad;
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 2, 2> hess;
};

/// Central finite differences of a scalar field over reference coordinates.
/// The stencil center is shifted so the full stencil stays inside [0,1]^d.
/// Throws NonFiniteError when the field is not finite on the stencil.
template <typename Field>
GradHess numeric_grad_hess(Field&& f, Coord x, double step = 1e-5) {
  const int d = static_cast<int>(x.size());
  for (int a = 0; a < d; ++a) {
    x[a] = std::min(std::max(x[a], step), 1.0 - step);
  }
  auto eval = [&](const Coord& p) {
    const double v = f(p);
    if (!std::isfinite(v)) {
      throw NonFiniteError("numeric_grad_hess: non-finite field value");
    }
    return v;
  };

  GradHess out;
  out.grad.resize(d);
  out.hess.resize(d, d);
  const double fc = eval(x);
  Eigen::Matrix<double, 2, 2> fp, fm;  // per-axis forward/backward values
  for (int a = 0; a < d; ++a) {
    Coord xp = x, xm = x;
    xp[a] += step;
    xm[a] -= step;
    fp(a, 0) = eval(xp);
    fm(a, 0) = eval(xm);
    out.grad[a] = (fp(a, 0) - fm(a, 0)) / (2.0 * step);
    out.hess(a, a) = (fp(a, 0) - 2.0 * fc + fm(a, 0)) / (step * step);
  }
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      Coord xpp = x, xpm = x, xmp = x, xmm = x;
      xpp[a] += step; xpp[b] += step;
      xpm[a] += step; xpm[b] -= step;
      xmp[a] -= step; xmp[b] += step;
      xmm[a] -= step; xmm[b] -= step;
      const double cross =
          (eval(xpp) - eval(xpm) - eval(xmp) + eval(xmm)) / (4.0 * step * step);
      out.hess(a, b) = cross;
      out.hess(b, a) = cross;
    }
  }
  out.hess = 0.5 * (out.hess + out.hess.transpose()).eval();
  return out;
}

}  // namespace cbp
