// Gauss-type quadrature on reference edges and triangles.
//
// Edge rules are Gauss-Legendre on [-1,1]. Triangle rules are conical products
// (Duffy transform) of a Gauss-Jacobi(1,0) rule in the collapsed direction and
// a Gauss-Legendre rule in the other, so every polynomial degree up to the cap
// is available with strictly positive weights. Nodes and weights come from the
// Golub-Welsch eigenvalue method applied to the Jacobi matrix.

#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace pdwg {

/// Hard cap on the exactness degree a rule can be requested for. Far beyond
/// what the solver needs, but keeps the eigenvalue problems small and sane.
inline constexpr int max_quadrature_degree = 60;

/// Quadrature rule on a reference domain: the segment [-1,1] for edges (only
/// column 0 of `points` is meaningful) or the unit triangle
/// {x >= 0, y >= 0, x + y <= 1} for elements. Weights are positive and sum to
/// the reference measure: 2 for the segment, 1/2 for the triangle.
struct QuadRule {
  Eigen::Matrix<double, Eigen::Dynamic, 2> points;
  Eigen::VectorXd weights;
  int degree = 0;  ///< every polynomial of this total degree integrates exactly

  int size() const { return static_cast<int>(weights.size()); }
};

namespace detail {

/// n-point Gauss rule on [-1,1] for the Jacobi weight (1-t)^a (1+t)^b via
/// Golub-Welsch: nodes are eigenvalues of the symmetric tridiagonal Jacobi
/// matrix, weights are mu0 times the squared first eigenvector components.
inline void gauss_jacobi_rule(int n, double a, double b,
                              Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
  Eigen::VectorXd diag(n), subdiag(n - 1 > 0 ? n - 1 : 0);
  const double ab = a + b;
  diag[0] = (b - a) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    const double d = 2.0 * k + ab;
    diag[k] = (b * b - a * a) / (d * (d + 2.0));
    subdiag[k - 1] = std::sqrt(4.0 * k * (k + a) * (k + b) * (k + ab) /
                               (d * d * (d + 1.0) * (d - 1.0)));
  }
  // mu0 = int_{-1}^{1} (1-t)^a (1+t)^b dt = 2^{a+b+1} B(a+1, b+1).
  const double mu0 = std::pow(2.0, ab + 1.0) * std::tgamma(a + 1.0) *
                     std::tgamma(b + 1.0) / std::tgamma(ab + 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, subdiag, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("quadrature: Jacobi matrix eigensolve failed");
  nodes = es.eigenvalues();
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    const double v0 = es.eigenvectors()(0, i);
    weights[i] = mu0 * v0 * v0;
  }
}

inline int gauss_point_count(int degree) { return degree / 2 + 1; }

inline void check_degree(int degree) {
  if (degree < 0 || degree > max_quadrature_degree)
    throw std::invalid_argument("quadrature: unsupported degree " +
                                std::to_string(degree) + " (supported: 0.." +
                                std::to_string(max_quadrature_degree) + ")");
}

}  // namespace detail

/// Gauss-Legendre rule on [-1,1] exact for polynomials of degree <= `degree`.
inline QuadRule edge_rule(int degree) {
  detail::check_degree(degree);
  const int n = detail::gauss_point_count(degree);
  Eigen::VectorXd t, w;
  detail::gauss_jacobi_rule(n, 0.0, 0.0, t, w);
  QuadRule rule;
  rule.points.setZero(n, 2);
  rule.points.col(0) = t;
  rule.weights = w;
  rule.degree = degree;
  return rule;
}

/// Conical-product rule on the unit triangle exact for total degree <= `degree`.
/// Built from int_T f = int_0^1 (1-x) int_0^1 f(x, (1-x)u) du dx, with a
/// Gauss-Jacobi(1,0) rule absorbing the (1-x) factor.
inline QuadRule triangle_rule(int degree) {
  detail::check_degree(degree);
  const int n = detail::gauss_point_count(degree);
  Eigen::VectorXd tx, wx, tu, wu;
  detail::gauss_jacobi_rule(n, 1.0, 0.0, tx, wx);
  detail::gauss_jacobi_rule(n, 0.0, 0.0, tu, wu);
  QuadRule rule;
  rule.points.resize(n * n, 2);
  rule.weights.resize(n * n);
  for (int i = 0; i < n; ++i) {
    const double x = 0.5 * (1.0 + tx[i]);
    const double wxi = 0.25 * wx[i];  // maps the weighted integral to [0,1]
    for (int j = 0; j < n; ++j) {
      const double u = 0.5 * (1.0 + tu[j]);
      const int q = i * n + j;
      rule.points(q, 0) = x;
      rule.points(q, 1) = (1.0 - x) * u;
      rule.weights[q] = wxi * 0.5 * wu[j];
    }
  }
  rule.degree = degree;
  return rule;
}

}  // namespace pdwg
