// Polynomial bases: graded monomial ordering, derivatives against central
// finite differences, scale invariance of the values, Gram matrices against
// hand-computed integrals, and Legendre orthogonality on edges.

#include <catch2/catch_amalgamated.hpp>

#include "pdwg/basis.hpp"
#include "pdwg/quadrature.hpp"

#include <cmath>
#include <random>

using pdwg::EdgeBasis;
using pdwg::Point;
using pdwg::TriBasis;

TEST_CASE("degree-1 basis at a point is [1, x, y] in local coordinates", "[basis]") {
  const TriBasis basis(1, Point(0.0, 0.0), 1.0);
  const Eigen::VectorXd v = basis.values(Point(0.3, 0.4));
  REQUIRE(basis.dim() == 3);
  REQUIRE(v[0] == Catch::Approx(1.0));
  REQUIRE(v[1] == Catch::Approx(0.3));
  REQUIRE(v[2] == Catch::Approx(0.4));
}

TEST_CASE("graded ordering and dimension", "[basis]") {
  for (int k = 0; k <= 4; ++k) {
    const TriBasis basis(k, Point(0.0, 0.0), 1.0);
    REQUIRE(basis.dim() == (k + 1) * (k + 2) / 2);
    int idx = 0;
    for (int l = 0; l <= k; ++l)
      for (int i = 0; i <= l; ++i, ++idx) {
        REQUIRE(basis.powers(idx)[0] == l - i);
        REQUIRE(basis.powers(idx)[1] == i);
      }
  }
}

TEST_CASE("values are invariant under translating and scaling the element", "[basis]") {
  const Point dir(0.6, -0.8);
  for (double scale : {0.25, 1.0, 3.5}) {
    for (const Point& center : {Point(0.0, 0.0), Point(-2.0, 5.0)}) {
      const TriBasis basis(3, center, scale);
      const Eigen::VectorXd v = basis.values(center + 0.37 * scale * dir);
      const TriBasis ref(3, Point(0.0, 0.0), 1.0);
      const Eigen::VectorXd vr = ref.values(0.37 * dir);
      REQUIRE((v - vr).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
}

TEST_CASE("gradients and Hessians match central finite differences", "[basis]") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const TriBasis basis(4, Point(0.4, -0.2), 1.7);
  const double h = 1e-5;
  for (int trial = 0; trial < 20; ++trial) {
    const Point x(unif(rng), unif(rng));
    const auto grad = basis.gradients(x);
    const auto hess = basis.hessians(x);
    for (int i = 0; i < basis.dim(); ++i) {
      auto f = [&](const Point& p) { return basis.values(p)[i]; };
      const Point ex(1.0, 0.0), ey(0.0, 1.0);
      REQUIRE(grad(i, 0) == Catch::Approx((f(x + h * ex) - f(x - h * ex)) / (2 * h)).margin(1e-6));
      REQUIRE(grad(i, 1) == Catch::Approx((f(x + h * ey) - f(x - h * ey)) / (2 * h)).margin(1e-6));
      REQUIRE(hess(i, 0) ==
              Catch::Approx((f(x + h * ex) - 2 * f(x) + f(x - h * ex)) / (h * h)).margin(2e-4));
      REQUIRE(hess(i, 2) ==
              Catch::Approx((f(x + h * ey) - 2 * f(x) + f(x - h * ey)) / (h * h)).margin(2e-4));
      const double mixed = (f(x + h * (ex + ey)) - f(x + h * (ex - ey)) -
                            f(x - h * (ex - ey)) + f(x - h * (ex + ey))) /
                           (4 * h * h);
      REQUIRE(hess(i, 1) == Catch::Approx(mixed).margin(2e-4));
    }
  }
}

TEST_CASE("Gram matrix entries match hand-computed integrals", "[basis]") {
  // Unit triangle, degree 1, center (1/3, 1/3), scale sqrt(2) (the diameter).
  // With xi = (x - 1/3)/sqrt(2), eta = (y - 1/3)/sqrt(2):
  //   int 1        = 1/2        int xi        = 0
  //   int xi^2     = 1/72       int xi eta    = -1/144
  const std::array<Point, 3> tri{Point(0, 0), Point(1, 0), Point(0, 1)};
  const TriBasis basis(1, Point(1.0 / 3, 1.0 / 3), std::sqrt(2.0));
  const Eigen::MatrixXd M = pdwg::mass_matrix(basis, tri, pdwg::triangle_rule(2));
  REQUIRE(M(0, 0) == Catch::Approx(0.5).epsilon(1e-14));
  REQUIRE(M(0, 1) == Catch::Approx(0.0).margin(1e-15));
  REQUIRE(M(0, 2) == Catch::Approx(0.0).margin(1e-15));
  REQUIRE(M(1, 1) == Catch::Approx(1.0 / 72).epsilon(1e-13));
  REQUIRE(M(2, 2) == Catch::Approx(1.0 / 72).epsilon(1e-13));
  REQUIRE(M(1, 2) == Catch::Approx(-1.0 / 144).epsilon(1e-13));
  REQUIRE((M - M.transpose()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("degree-2 Gram matrix on the unit triangle is well conditioned", "[basis]") {
  // Element scaling convention: centroid center, half-diameter scale.
  const std::array<Point, 3> tri{Point(0, 0), Point(1, 0), Point(0, 1)};
  const TriBasis basis(2, Point(1.0 / 3, 1.0 / 3), 0.5 * std::sqrt(2.0));
  const Eigen::MatrixXd M = pdwg::mass_matrix(basis, tri, pdwg::triangle_rule(4));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  REQUIRE(es.eigenvalues().minCoeff() > 0.0);
  REQUIRE(es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff() < 1e3);
}

TEST_CASE("a too-weak rule for the Gram matrix is rejected", "[basis]") {
  const std::array<Point, 3> tri{Point(0, 0), Point(1, 0), Point(0, 1)};
  const TriBasis basis(2, Point(1.0 / 3, 1.0 / 3), 1.0);
  REQUIRE_THROWS_AS(pdwg::mass_matrix(basis, tri, pdwg::triangle_rule(3)),
                    std::invalid_argument);
}

TEST_CASE("edge basis reproduces known Legendre values", "[basis]") {
  const EdgeBasis basis(4);
  const Eigen::VectorXd v = basis.values(0.5);
  REQUIRE(v[0] == Catch::Approx(1.0));
  REQUIRE(v[1] == Catch::Approx(0.5));
  REQUIRE(v[2] == Catch::Approx(-0.125));
  REQUIRE(v[3] == Catch::Approx(-0.4375));
  REQUIRE(v[4] == Catch::Approx(-0.2890625));
}

TEST_CASE("edge basis is orthogonal with Gram diagonal L/(2i+1)", "[basis]") {
  const int degree = 4;
  const EdgeBasis basis(degree);
  const double length = 2.7;
  const pdwg::QuadRule rule = pdwg::edge_rule(2 * degree);
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(basis.dim(), basis.dim());
  for (int q = 0; q < rule.size(); ++q) {
    const Eigen::VectorXd v = basis.values(rule.points(q, 0));
    G.noalias() += (0.5 * length * rule.weights[q]) * v * v.transpose();
  }
  const Eigen::VectorXd diag = pdwg::edge_mass_diagonal(basis, length);
  for (int i = 0; i < basis.dim(); ++i)
    for (int j = 0; j < basis.dim(); ++j) {
      if (i == j)
        REQUIRE(G(i, i) == Catch::Approx(diag[i]).epsilon(1e-13));
      else
        REQUIRE(std::abs(G(i, j)) < 1e-14);
    }
}
