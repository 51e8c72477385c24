// Element-local forms and global assembly of the saddle-point system
//
//   [ S  B^T ] [ rho ]   [ F ]
//   [ B   0  ] [  u  ] = [ 0 ]
//
// where S is the stabilizer bilinear form on the dual space, B couples the
// dual weak operator against the primal space, and F collects -(f, sigma_0)
// plus the Dirichlet boundary term acting on the edge-gradient test pieces.
//
// The stabilizer on one element T with diameter h is
//   h^-3 int_dT (rho_0 - rho_b)(sigma_0 - sigma_b)
//   + h^-1 int_dT (grad rho_0 - rho_g) . (grad sigma_0 - sigma_g)
//   + delta int_T (L rho_0)(L sigma_0),
// with L the strong operator mu . grad + 1/2 sum_ij a_ij d2_ji applied to the
// interior polynomial. In the continuous variant the first term vanishes
// identically (the edge value is the trace) and is skipped.
//
// The coupling form is b_T(sigma, v) = (v, L_w sigma)_T with L_w built from
// the weak gradient and weak Hessian.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <array>
#include <vector>

#include "pdwg/dof_map.hpp"
#include "pdwg/problems.hpp"
#include "pdwg/weak_calculus.hpp"

namespace pdwg {

/// The three stabilizer ingredients of one element, split for testability:
/// [0] the value-jump term (identically zero in the continuous variant),
/// [1] the gradient-jump term, [2] the strong-operator term WITHOUT its
/// delta weight. All are symmetric positive semidefinite by construction.
inline std::array<Eigen::MatrixXd, 3> local_stabilizer_terms(
    const ElementGeometry& g, const ModelProblem& p, RegionTag tag, int k, Variant variant,
    int quad_degree) {
  const WeakLayout layout(k, variant);
  const int n = layout.size();
  std::array<Eigen::MatrixXd, 3> terms{Eigen::MatrixXd::Zero(n, n),
                                       Eigen::MatrixXd::Zero(n, n),
                                       Eigen::MatrixXd::Zero(n, n)};
  const int qd = std::min(std::max(quad_degree, 2 * k), max_quadrature_degree);
  const QuadRule eq = edge_rule(qd), tq = triangle_rule(qd);
  const TriBasis basis = element_basis(g, k);
  const EdgeBasis value_basis(k), grad_basis(k - 1);
  const double h = g.diameter;

  for (int side = 0; side < 3; ++side) {
    const ElementSide& sd = g.sides[side];
    for (int q = 0; q < eq.size(); ++q) {
      const double t = eq.points(q, 0);
      const Point x = sd.at(t);
      const double ds = 0.5 * sd.length * eq.weights[q];
      if (variant == Variant::discontinuous) {
        Eigen::VectorXd jump = Eigen::VectorXd::Zero(n);
        jump.segment(layout.interior_offset(), layout.n_interior) = basis.values(x);
        jump.segment(layout.side_value_offset(side), layout.side_value_dim) =
            -value_basis.values(t);
        terms[0].noalias() += (ds / (h * h * h)) * jump * jump.transpose();
      }
      const auto grads = basis.gradients(x);
      const Eigen::VectorXd eg = grad_basis.values(t);
      for (int c = 0; c < 2; ++c) {
        Eigen::VectorXd jump = Eigen::VectorXd::Zero(n);
        jump.segment(layout.interior_offset(), layout.n_interior) = grads.col(c);
        jump.segment(layout.side_grad_offset(side, c), layout.side_grad_dim) = -eg;
        terms[1].noalias() += (ds / h) * jump * jump.transpose();
      }
    }
  }

  const double jac = 2.0 * g.area;
  for (int q = 0; q < tq.size(); ++q) {
    const Point x = g.vertices[0] + tq.points(q, 0) * (g.vertices[1] - g.vertices[0]) +
                    tq.points(q, 1) * (g.vertices[2] - g.vertices[0]);
    const Eigen::Matrix2d a = p.a(x, tag);
    const Point mu = p.mu(x, tag);
    const auto grads = basis.gradients(x);
    const auto hess = basis.hessians(x);
    Eigen::VectorXd strong = Eigen::VectorXd::Zero(n);
    strong.segment(layout.interior_offset(), layout.n_interior) =
        grads * Eigen::Vector2d(mu) +
        0.5 * (a(0, 0) * hess.col(0) + (a(0, 1) + a(1, 0)) * hess.col(1) +
               a(1, 1) * hess.col(2));
    terms[2].noalias() += (jac * tq.weights[q]) * strong * strong.transpose();
  }
  return terms;
}

inline Eigen::MatrixXd local_stabilizer(const ElementGeometry& g, const ModelProblem& p,
                                        RegionTag tag, int k, Variant variant,
                                        double delta, int quad_degree) {
  const auto terms = local_stabilizer_terms(g, p, tag, k, variant, quad_degree);
  return terms[0] + terms[1] + delta * terms[2];
}

/// Local coupling matrix: rows are the element's primal basis (degree s),
/// columns the flattened dual coefficients; entry (m, c) is
/// (psi_m, L_w sigma_c)_T.
inline Eigen::MatrixXd local_coupling(const ElementGeometry& g, const WeakOperators& ops,
                                      const ModelProblem& p, RegionTag tag, int quad_degree) {
  const int k = ops.layout.k;
  const int qd = std::min(std::max(quad_degree, 2 * k), max_quadrature_degree);
  const QuadRule tq = triangle_rule(qd);
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(ops.hessian_basis.dim(), ops.layout.size());
  const double jac = 2.0 * g.area;
  for (int q = 0; q < tq.size(); ++q) {
    const Point x = g.vertices[0] + tq.points(q, 0) * (g.vertices[1] - g.vertices[0]) +
                    tq.points(q, 1) * (g.vertices[2] - g.vertices[0]);
    const Eigen::Matrix2d a = p.a(x, tag);
    const Point mu = p.mu(x, tag);
    const Eigen::VectorXd gv = ops.gradient_basis.values(x);
    const Eigen::VectorXd hv = ops.hessian_basis.values(x);
    // Row vector of L_w sigma evaluated at x, as a functional of the dual dofs.
    Eigen::RowVectorXd op_row = Eigen::RowVectorXd::Zero(ops.layout.size());
    for (int c = 0; c < 2; ++c) op_row.noalias() += mu[c] * (gv.transpose() * ops.gradient[c]);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        op_row.noalias() += 0.5 * a(i, j) * (hv.transpose() * ops.hessian[j][i]);
    B.noalias() += (jac * tq.weights[q]) * hv * op_row;
  }
  return B;
}

/// Local dual-side load: -(f, sigma_0)_T on the interior block plus, on
/// boundary sides, the Dirichlet term 1/2 sum_i <a_ij g, sigma_gj n_i>
/// acting on the edge-gradient blocks.
inline Eigen::VectorXd local_load(const ElementGeometry& g, const Mesh& mesh, int element,
                                  const ModelProblem& p, RegionTag tag, int k, Variant variant,
                                  int quad_degree) {
  const WeakLayout layout(k, variant);
  Eigen::VectorXd F = Eigen::VectorXd::Zero(layout.size());
  const int qd = std::min(std::max(quad_degree, 2 * k), max_quadrature_degree);
  const QuadRule tq = triangle_rule(qd);
  const TriBasis basis = element_basis(g, k);
  const double jac = 2.0 * g.area;
  for (int q = 0; q < tq.size(); ++q) {
    const Point x = g.vertices[0] + tq.points(q, 0) * (g.vertices[1] - g.vertices[0]) +
                    tq.points(q, 1) * (g.vertices[2] - g.vertices[0]);
    F.segment(layout.interior_offset(), layout.n_interior).noalias() -=
        (jac * tq.weights[q] * p.f(x, tag)) * basis.values(x);
  }
  const QuadRule eq = edge_rule(qd);
  const EdgeBasis grad_basis(k - 1);
  for (int side = 0; side < 3; ++side) {
    if (!mesh.edges[mesh.triangle_edges[element][side]].boundary()) continue;
    const ElementSide& sd = g.sides[side];
    for (int q = 0; q < eq.size(); ++q) {
      const double t = eq.points(q, 0);
      const Point x = sd.at(t);
      const double ds = 0.5 * sd.length * eq.weights[q];
      const Eigen::Matrix2d a = p.a(x, tag);
      const double gval = p.g(x, tag);
      const Eigen::VectorXd eg = grad_basis.values(t);
      for (int j = 0; j < 2; ++j) {
        const double flux = 0.5 * (a(0, j) * sd.normal[0] + a(1, j) * sd.normal[1]);
        F.segment(layout.side_grad_offset(side, j), layout.side_grad_dim).noalias() +=
            (ds * flux * gval) * eg;
      }
    }
  }
  return F;
}

struct SaddleSystem {
  Eigen::SparseMatrix<double> S;  ///< n_dual x n_dual, symmetric
  Eigen::SparseMatrix<double> B;  ///< n_primal x n_dual
  Eigen::VectorXd F;              ///< n_dual
  DofMap dof;
};

inline SaddleSystem assemble(const Mesh& mesh, const ModelProblem& p, int k, int s,
                             Variant variant, double delta, int quad_degree) {
  SaddleSystem sys;
  sys.dof = build_dof_map(mesh, k, s, variant);
  const WeakLayout layout(k, variant);
  sys.F = Eigen::VectorXd::Zero(sys.dof.n_dual);
  std::vector<Eigen::Triplet<double>> s_trip, b_trip;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const ElementGeometry g = element_geometry(mesh, t);
    const RegionTag tag = p.tag_of(g.centroid);
    const WeakOperators ops = build_weak_operators(g, k, s, variant, quad_degree);
    Eigen::MatrixXd S_loc = local_stabilizer(g, p, tag, k, variant, delta, quad_degree);
    Eigen::MatrixXd B_loc = local_coupling(g, ops, p, tag, quad_degree);
    Eigen::VectorXd F_loc = local_load(g, mesh, t, p, tag, k, variant, quad_degree);
    if (variant == Variant::continuous) {
      // Express the interior block in nodal values so shared nodes assemble.
      Eigen::MatrixXd T = Eigen::MatrixXd::Identity(layout.size(), layout.size());
      T.topLeftCorner(layout.n_interior, layout.n_interior) = sys.dof.nodal_to_monomial[t];
      S_loc = T.transpose() * S_loc * T;
      B_loc = B_loc * T;
      F_loc = T.transpose() * F_loc;
    }
    const std::vector<int> cols = element_dual_dofs(sys.dof, mesh, t);
    for (int i = 0; i < layout.size(); ++i) {
      if (cols[i] < 0) continue;
      sys.F[cols[i]] += F_loc[i];
      for (int j = 0; j < layout.size(); ++j)
        if (cols[j] >= 0) s_trip.emplace_back(cols[i], cols[j], S_loc(i, j));
      for (int m = 0; m < sys.dof.primal_block; ++m)
        b_trip.emplace_back(sys.dof.primal_offset(t) + m, cols[i], B_loc(m, i));
    }
  }
  sys.S.resize(sys.dof.n_dual, sys.dof.n_dual);
  sys.S.setFromTriplets(s_trip.begin(), s_trip.end());
  sys.B.resize(sys.dof.n_primal, sys.dof.n_dual);
  sys.B.setFromTriplets(b_trip.begin(), b_trip.end());
  return sys;
}

/// The assembled indefinite block matrix [[S, B^T], [B, 0]].
inline Eigen::SparseMatrix<double> saddle_matrix(const SaddleSystem& sys) {
  const int n = sys.dof.n_dual + sys.dof.n_primal;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(sys.S.nonZeros() + 2 * sys.B.nonZeros());
  for (int o = 0; o < sys.S.outerSize(); ++o)
    for (Eigen::SparseMatrix<double>::InnerIterator it(sys.S, o); it; ++it)
      trip.emplace_back(it.row(), it.col(), it.value());
  for (int o = 0; o < sys.B.outerSize(); ++o)
    for (Eigen::SparseMatrix<double>::InnerIterator it(sys.B, o); it; ++it) {
      trip.emplace_back(sys.dof.n_dual + it.row(), it.col(), it.value());
      trip.emplace_back(it.col(), sys.dof.n_dual + it.row(), it.value());
    }
  Eigen::SparseMatrix<double> A(n, n);
  A.setFromTriplets(trip.begin(), trip.end());
  return A;
}

inline Eigen::VectorXd saddle_rhs(const SaddleSystem& sys) {
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(sys.dof.n_dual + sys.dof.n_primal);
  rhs.head(sys.dof.n_dual) = sys.F;
  return rhs;
}

}  // namespace pdwg
