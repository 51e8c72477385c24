// Polynomial bases for the local calculus: scaled-centered monomials on a
// triangle (with gradients and Hessians) and Legendre polynomials on an edge,
// plus the associated Gram matrices.
//
// Element basis functions are ((x - c) / h)^alpha in graded order
// 1, x, y, x^2, xy, y^2, ... so their values are invariant under a similarity
// scaling of the element, which keeps Gram matrices uniformly conditioned.
// Edge bases are Legendre polynomials in the fixed edge parameter t in [-1,1],
// orthogonal by construction: the Gram matrix over an edge of length L is
// diag(L / (2i + 1)).

#pragma once

#include <Eigen/Dense>
#include <array>
#include <stdexcept>
#include <vector>

#include "pdwg/geometry.hpp"
#include "pdwg/quadrature.hpp"

namespace pdwg {

/// Dimension of the polynomial space of total degree <= k on a triangle.
inline int poly_space_dim(int k) { return (k + 1) * (k + 2) / 2; }

/// Basis of P_k on a triangle: scaled-centered monomials ((x - c)/h)^alpha in
/// graded lexicographic order (all of degree l before degree l+1; within a
/// block the x-exponent decreases).
class TriBasis {
 public:
  TriBasis(int degree, const Point& center, double scale)
      : m_degree(degree), m_center(center), m_scale(scale) {
    if (degree < 0) throw std::invalid_argument("TriBasis: negative degree");
    if (!(scale > 0.0)) throw std::invalid_argument("TriBasis: scale must be positive");
    m_powers.reserve(poly_space_dim(degree));
    for (int l = 0; l <= degree; ++l)
      for (int i = 0; i <= l; ++i) m_powers.push_back({l - i, i});
  }

  int degree() const { return m_degree; }
  int dim() const { return static_cast<int>(m_powers.size()); }
  const Point& center() const { return m_center; }
  double scale() const { return m_scale; }
  const std::array<int, 2>& powers(int i) const { return m_powers[i]; }

  /// Values of all basis functions at x, as a dim-vector.
  Eigen::VectorXd values(const Point& x) const {
    const auto [xi, eta] = local(x);
    const auto px = pow_table(xi), py = pow_table(eta);
    Eigen::VectorXd v(dim());
    for (int i = 0; i < dim(); ++i) v[i] = px[m_powers[i][0]] * py[m_powers[i][1]];
    return v;
  }

  /// Gradients of all basis functions at x, as a dim x 2 matrix.
  Eigen::Matrix<double, Eigen::Dynamic, 2> gradients(const Point& x) const {
    const auto [xi, eta] = local(x);
    const auto px = pow_table(xi), py = pow_table(eta);
    Eigen::Matrix<double, Eigen::Dynamic, 2> g(dim(), 2);
    for (int i = 0; i < dim(); ++i) {
      const int a = m_powers[i][0], b = m_powers[i][1];
      g(i, 0) = a > 0 ? a * px[a - 1] * py[b] / m_scale : 0.0;
      g(i, 1) = b > 0 ? b * px[a] * py[b - 1] / m_scale : 0.0;
    }
    return g;
  }

  /// Second derivatives of all basis functions at x; column order is
  /// (d11, d12, d22), the mixed derivative being symmetric for polynomials.
  Eigen::Matrix<double, Eigen::Dynamic, 3> hessians(const Point& x) const {
    const auto [xi, eta] = local(x);
    const auto px = pow_table(xi), py = pow_table(eta);
    const double s2 = m_scale * m_scale;
    Eigen::Matrix<double, Eigen::Dynamic, 3> h(dim(), 3);
    for (int i = 0; i < dim(); ++i) {
      const int a = m_powers[i][0], b = m_powers[i][1];
      h(i, 0) = a > 1 ? a * (a - 1) * px[a - 2] * py[b] / s2 : 0.0;
      h(i, 1) = (a > 0 && b > 0) ? a * b * px[a - 1] * py[b - 1] / s2 : 0.0;
      h(i, 2) = b > 1 ? b * (b - 1) * px[a] * py[b - 2] / s2 : 0.0;
    }
    return h;
  }

  /// Value of the polynomial with the given coefficients at x.
  double evaluate(const Eigen::VectorXd& coeffs, const Point& x) const {
    return coeffs.dot(values(x));
  }

 private:
  std::pair<double, double> local(const Point& x) const {
    return {(x.x() - m_center.x()) / m_scale, (x.y() - m_center.y()) / m_scale};
  }

  std::vector<double> pow_table(double v) const {
    std::vector<double> p(m_degree + 1);
    p[0] = 1.0;
    for (int i = 1; i <= m_degree; ++i) p[i] = p[i - 1] * v;
    return p;
  }

  int m_degree;
  Point m_center;
  double m_scale;
  std::vector<std::array<int, 2>> m_powers;
};

/// Basis of P_k on an edge: Legendre polynomials in the edge parameter
/// t in [-1,1], evaluated by the three-term recurrence.
class EdgeBasis {
 public:
  explicit EdgeBasis(int degree) : m_degree(degree) {
    if (degree < 0) throw std::invalid_argument("EdgeBasis: negative degree");
  }

  int degree() const { return m_degree; }
  int dim() const { return m_degree + 1; }

  /// Values of all basis functions at parameter t, as a dim-vector.
  Eigen::VectorXd values(double t) const {
    Eigen::VectorXd v(dim());
    v[0] = 1.0;
    if (m_degree >= 1) v[1] = t;
    for (int n = 1; n < m_degree; ++n)
      v[n + 1] = ((2 * n + 1) * t * v[n] - n * v[n - 1]) / (n + 1);
    return v;
  }

  double evaluate(const Eigen::VectorXd& coeffs, double t) const {
    return coeffs.dot(values(t));
  }

 private:
  int m_degree;
};

/// Gram matrix of a triangle basis over the triangle with the given vertices.
/// The rule must integrate degree 2 * basis degree exactly.
inline Eigen::MatrixXd mass_matrix(const TriBasis& basis,
                                   const std::array<Point, 3>& tri,
                                   const QuadRule& rule) {
  if (rule.degree < 2 * basis.degree())
    throw std::invalid_argument("mass_matrix: quadrature degree too low");
  const double jac = 2.0 * triangle_area(tri[0], tri[1], tri[2]);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(basis.dim(), basis.dim());
  for (int q = 0; q < rule.size(); ++q) {
    const Point x = tri[0] + rule.points(q, 0) * (tri[1] - tri[0]) +
                    rule.points(q, 1) * (tri[2] - tri[0]);
    const Eigen::VectorXd v = basis.values(x);
    M.noalias() += (jac * rule.weights[q]) * v * v.transpose();
  }
  return M;
}

/// Diagonal of the Gram matrix of the Legendre edge basis over an edge of
/// length L: entry i is L / (2i + 1). Off-diagonal entries vanish exactly.
inline Eigen::VectorXd edge_mass_diagonal(const EdgeBasis& basis, double length) {
  Eigen::VectorXd d(basis.dim());
  for (int i = 0; i < basis.dim(); ++i) d[i] = length / (2.0 * i + 1.0);
  return d;
}

}  // namespace pdwg
