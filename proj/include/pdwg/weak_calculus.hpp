// The discrete weak calculus: projections into the local spaces and the weak
// gradient / weak Hessian operators defined element by element through
// integration by parts against polynomial test functions.
//
// For a dual-space function v = (interior v0, side value vb, side gradient
// vg), the weak gradient G in [P_{k-1}(T)]^2 solves, component by component,
//     (G_c, q)_T = -(v0, d_c q)_T + sum_sides <vb, q n_c>      for q in P_{k-1}(T),
// and the weak Hessian entry H_ij in P_s(T) solves
//     (H_ij, p)_T = (v0, d_j d_i p)_T - <vb n_i, d_j p> + <vg_i, p n_j>
// for p in P_s(T). In the continuous variant the side value is the trace of
// v0 and one integration by parts is undone, which removes vb entirely:
//     (G_c, q)_T = (d_c v0, q)_T,
//     (H_ij, p)_T = -(d_i v0, d_j p)_T + <vg_i, p n_j>.
// H_ij is not symmetric in (i, j) in general; both orderings are produced.
//
// The operators are exposed as matrices acting on the flattened local
// coefficient vector so the same code serves single evaluations in tests and
// bulk assembly of the global forms.

#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <stdexcept>

#include "pdwg/basis.hpp"
#include "pdwg/quadrature.hpp"
#include "pdwg/weak_space.hpp"

namespace pdwg {

using ScalarField = std::function<double(const Point&)>;
using VectorField = std::function<Point(const Point&)>;

/// L2 projection of f onto P_degree of the element, as monomial coefficients.
/// The rule must be exact to 2*degree for the Gram matrix; f itself is
/// integrated at whatever accuracy the rule offers.
inline Eigen::VectorXd project_element(const ScalarField& f, const ElementGeometry& g,
                                       int degree, const QuadRule& rule) {
  const TriBasis basis = element_basis(g, degree);
  const Eigen::MatrixXd M = mass_matrix(basis, g.vertices, rule);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(basis.dim());
  const double jac = 2.0 * g.area;
  for (int q = 0; q < rule.size(); ++q) {
    const Point x = g.vertices[0] + rule.points(q, 0) * (g.vertices[1] - g.vertices[0]) +
                    rule.points(q, 1) * (g.vertices[2] - g.vertices[0]);
    rhs.noalias() += (jac * rule.weights[q] * f(x)) * basis.values(x);
  }
  Eigen::LDLT<Eigen::MatrixXd> ldlt(M);
  if (ldlt.info() != Eigen::Success)
    throw std::runtime_error("project_element: singular Gram matrix");
  return ldlt.solve(rhs);
}

/// L2 projection of f onto P_degree of the side a -> b, as Legendre
/// coefficients in the side parameter. Orthogonality makes the Gram matrix
/// diagonal and the edge length cancels from the coefficients.
inline Eigen::VectorXd project_edge(const ScalarField& f, const Point& a, const Point& b,
                                    int degree, const QuadRule& rule) {
  const EdgeBasis basis(degree);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(basis.dim());
  for (int q = 0; q < rule.size(); ++q) {
    const double t = rule.points(q, 0);
    c.noalias() += (rule.weights[q] * f(edge_point(a, b, t))) * basis.values(t);
  }
  for (int i = 0; i < basis.dim(); ++i) c[i] *= (2.0 * i + 1.0) / 2.0;
  return c;
}

/// Interpolant of w into P_k of the element matching the continuous variant's
/// global space: vertex values, side moments against P_{k-2} of each side,
/// and interior moments against P_{k-3} of the element. Returns monomial
/// coefficients. Reproduces polynomials of degree <= k exactly.
inline Eigen::VectorXd interpolate_continuous(const ScalarField& w, const ElementGeometry& g,
                                              int k, const QuadRule& tri_rule,
                                              const QuadRule& edge_quad) {
  const TriBasis basis = element_basis(g, k);
  const int n = basis.dim();
  Eigen::MatrixXd A(n, n);
  Eigen::VectorXd rhs(n);
  int row = 0;
  for (int v = 0; v < 3; ++v, ++row) {
    A.row(row) = basis.values(g.vertices[v]).transpose();
    rhs[row] = w(g.vertices[v]);
  }
  if (k >= 2) {
    const EdgeBasis moments(k - 2);
    for (const ElementSide& side : g.sides) {
      Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(moments.dim(), n);
      Eigen::VectorXd vals = Eigen::VectorXd::Zero(moments.dim());
      for (int q = 0; q < edge_quad.size(); ++q) {
        const double t = edge_quad.points(q, 0);
        const Point x = side.at(t);
        const Eigen::VectorXd m = edge_quad.weights[q] * moments.values(t);
        rows.noalias() += m * basis.values(x).transpose();
        vals.noalias() += m * w(x);
      }
      A.middleRows(row, moments.dim()) = rows;
      rhs.segment(row, moments.dim()) = vals;
      row += moments.dim();
    }
  }
  if (k >= 3) {
    const TriBasis moments = element_basis(g, k - 3);
    Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(moments.dim(), n);
    Eigen::VectorXd vals = Eigen::VectorXd::Zero(moments.dim());
    for (int q = 0; q < tri_rule.size(); ++q) {
      const Point x = g.vertices[0] + tri_rule.points(q, 0) * (g.vertices[1] - g.vertices[0]) +
                      tri_rule.points(q, 1) * (g.vertices[2] - g.vertices[0]);
      const Eigen::VectorXd m = tri_rule.weights[q] * moments.values(x);
      rows.noalias() += m * basis.values(x).transpose();
      vals.noalias() += m * w(x);
    }
    A.middleRows(row, moments.dim()) = rows;
    rhs.segment(row, moments.dim()) = vals;
    row += moments.dim();
  }
  if (row != n) throw std::logic_error("interpolate_continuous: condition count mismatch");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (!lu.isInvertible())
    throw std::runtime_error("interpolate_continuous: singular interpolation system");
  return lu.solve(rhs);
}

/// Projection of a smooth function (given with its gradient) into the local
/// dual space: interior part by L2 projection (discontinuous variant) or the
/// continuity-preserving interpolant (continuous variant), side values by
/// side L2 projection of the trace, side gradients by componentwise side L2
/// projection of the gradient.
inline LocalWeakFunction project_weak(const ScalarField& w, const VectorField& grad_w,
                                      const ElementGeometry& g, int k, Variant variant,
                                      int quad_degree) {
  const int qd = std::min(std::max(quad_degree, 2 * k), max_quadrature_degree);
  const QuadRule tq = triangle_rule(qd);
  const QuadRule eq = edge_rule(qd);
  LocalWeakFunction f;
  f.interior = variant == Variant::discontinuous
                   ? project_element(w, g, k, tq)
                   : interpolate_continuous(w, g, k, tq, eq);
  for (int s = 0; s < 3; ++s) {
    f.side_value[s] = project_edge(w, g.sides[s].a, g.sides[s].b, k, eq);
    for (int c = 0; c < 2; ++c)
      f.side_grad[s][c] = project_edge([&](const Point& x) { return grad_w(x)[c]; },
                                       g.sides[s].a, g.sides[s].b, k - 1, eq);
  }
  return f;
}

/// Weak gradient and weak Hessian of one element, as matrices taking the
/// flattened local coefficient vector to monomial coefficients of the result.
struct WeakOperators {
  WeakLayout layout;
  TriBasis interior_basis;                               ///< P_k
  TriBasis gradient_basis;                               ///< P_{k-1}
  TriBasis hessian_basis;                                ///< P_s
  std::array<Eigen::MatrixXd, 2> gradient;               ///< [c]: dim P_{k-1} x layout.size()
  std::array<std::array<Eigen::MatrixXd, 2>, 2> hessian; ///< [i][j]: dim P_s x layout.size()
};

inline WeakOperators build_weak_operators(const ElementGeometry& g, int k, int s,
                                          Variant variant, int quad_degree) {
  check_orders(k, s);
  const int qd = std::min(std::max(quad_degree, 2 * k), max_quadrature_degree);
  const QuadRule tq = triangle_rule(qd);
  const QuadRule eq = edge_rule(qd);

  WeakOperators ops{WeakLayout(k, variant), element_basis(g, k), element_basis(g, k - 1),
                    element_basis(g, s),    {},                  {}};
  const WeakLayout& L = ops.layout;
  const int dim_g = ops.gradient_basis.dim(), dim_h = ops.hessian_basis.dim();
  for (int c = 0; c < 2; ++c) ops.gradient[c].setZero(dim_g, L.size());
  for (auto& row : ops.hessian)
    for (auto& m : row) m.setZero(dim_h, L.size());

  // Hessian column index of (d_j d_i p) in the (d11, d12, d22) storage.
  auto hess_col = [](int i, int j) { return i + j; };

  const double jac = 2.0 * g.area;
  for (int q = 0; q < tq.size(); ++q) {
    const Point x = g.vertices[0] + tq.points(q, 0) * (g.vertices[1] - g.vertices[0]) +
                    tq.points(q, 1) * (g.vertices[2] - g.vertices[0]);
    const double w = jac * tq.weights[q];
    const Eigen::VectorXd vk = ops.interior_basis.values(x);
    const auto gv = ops.gradient_basis.values(x);
    const auto gg = ops.gradient_basis.gradients(x);
    const auto hv = ops.hessian_basis.values(x);
    const auto hg = ops.hessian_basis.gradients(x);
    const auto hh = ops.hessian_basis.hessians(x);
    if (variant == Variant::discontinuous) {
      for (int c = 0; c < 2; ++c)
        ops.gradient[c].middleCols(L.interior_offset(), L.n_interior).noalias() -=
            w * gg.col(c) * vk.transpose();
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          ops.hessian[i][j].middleCols(L.interior_offset(), L.n_interior).noalias() +=
              w * hh.col(hess_col(i, j)) * vk.transpose();
    } else {
      const auto gk = ops.interior_basis.gradients(x);
      for (int c = 0; c < 2; ++c)
        ops.gradient[c].middleCols(L.interior_offset(), L.n_interior).noalias() +=
            w * gv * gk.col(c).transpose();
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          ops.hessian[i][j].middleCols(L.interior_offset(), L.n_interior).noalias() -=
              w * hg.col(j) * gk.col(i).transpose();
    }
  }

  const EdgeBasis value_basis(k), grad_basis_1d(k - 1);
  for (int side = 0; side < 3; ++side) {
    const ElementSide& sd = g.sides[side];
    for (int q = 0; q < eq.size(); ++q) {
      const double t = eq.points(q, 0);
      const Point x = sd.at(t);
      const double w = 0.5 * sd.length * eq.weights[q];
      const Eigen::VectorXd eg = grad_basis_1d.values(t);
      const Eigen::VectorXd hv = ops.hessian_basis.values(x);
      const auto hg = ops.hessian_basis.gradients(x);
      if (variant == Variant::discontinuous) {
        const Eigen::VectorXd ev = value_basis.values(t);
        const Eigen::VectorXd gv = ops.gradient_basis.values(x);
        for (int c = 0; c < 2; ++c)
          ops.gradient[c].middleCols(L.side_value_offset(side), L.side_value_dim).noalias() +=
              (w * sd.normal[c]) * gv * ev.transpose();
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            ops.hessian[i][j].middleCols(L.side_value_offset(side), L.side_value_dim).noalias() -=
                (w * sd.normal[i]) * hg.col(j) * ev.transpose();
      }
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          ops.hessian[i][j].middleCols(L.side_grad_offset(side, i), L.side_grad_dim).noalias() +=
              (w * sd.normal[j]) * hv * eg.transpose();
    }
  }

  const Eigen::LDLT<Eigen::MatrixXd> Mg(mass_matrix(ops.gradient_basis, g.vertices, tq));
  const Eigen::LDLT<Eigen::MatrixXd> Mh(mass_matrix(ops.hessian_basis, g.vertices, tq));
  if (Mg.info() != Eigen::Success || Mh.info() != Eigen::Success)
    throw std::runtime_error("build_weak_operators: singular Gram matrix");
  for (int c = 0; c < 2; ++c) ops.gradient[c] = Mg.solve(ops.gradient[c]);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) ops.hessian[i][j] = Mh.solve(ops.hessian[i][j]);
  return ops;
}

/// Weak gradient of a single local function: monomial coefficients of each
/// Cartesian component in P_{k-1} of the element.
struct WeakGradient {
  TriBasis basis;
  std::array<Eigen::VectorXd, 2> comp;

  Point evaluate(const Point& x) const {
    return Point(basis.evaluate(comp[0], x), basis.evaluate(comp[1], x));
  }
};

/// Weak Hessian of a single local function: monomial coefficients of each
/// entry in P_s of the element, indexed [i][j] (not symmetric in general).
struct WeakHessian {
  TriBasis basis;
  std::array<std::array<Eigen::VectorXd, 2>, 2> comp;

  double evaluate(int i, int j, const Point& x) const {
    return basis.evaluate(comp[i][j], x);
  }
};

inline WeakGradient weak_gradient(const LocalWeakFunction& f, const ElementGeometry& g,
                                  int k, Variant variant, int quad_degree) {
  const int s = k >= 2 ? k - 1 : 0;  // any valid primal degree; gradient ignores it
  const WeakOperators ops = build_weak_operators(g, k, s, variant, quad_degree);
  const Eigen::VectorXd x = flatten(f, ops.layout);
  return WeakGradient{ops.gradient_basis, {ops.gradient[0] * x, ops.gradient[1] * x}};
}

inline WeakHessian weak_hessian(const LocalWeakFunction& f, const ElementGeometry& g,
                                int k, int s, Variant variant, int quad_degree) {
  const WeakOperators ops = build_weak_operators(g, k, s, variant, quad_degree);
  const Eigen::VectorXd x = flatten(f, ops.layout);
  WeakHessian h{ops.hessian_basis, {}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) h.comp[i][j] = ops.hessian[i][j] * x;
  return h;
}

}  // namespace pdwg
