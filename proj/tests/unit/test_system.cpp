// Degree-of-freedom bookkeeping and saddle-system assembly.

#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <array>
#include <cmath>

#include "pdwg/assembly.hpp"
#include "pdwg/dof_map.hpp"
#include "pdwg/problems.hpp"

using namespace pdwg;

namespace {

ModelProblem constant_problem(Eigen::Matrix2d a, Point mu) {
  ModelProblem p;
  p.id = "test_constant";
  p.a = [a](const Point&, RegionTag) { return a; };
  p.mu = [mu](const Point&, RegionTag) { return mu; };
  p.f = [](const Point&, RegionTag) { return 0.0; };
  p.g = [](const Point&, RegionTag) { return 0.0; };
  p.region_rule = [](const Point&) { return 0; };
  return p;
}

Eigen::Matrix2d sample_a() {
  Eigen::Matrix2d a;
  a << 3.0, 1.0, 1.0, 2.0;
  return a;
}

}  // namespace

TEST_CASE("dual and primal unknown counts on the initial unit square", "[system]") {
  const Mesh m = mesh_at_level(Domain::unit_square, 1);

  const DofMap d = build_dof_map(m, 2, 1, Variant::discontinuous);
  // 2 interiors of dim 6, one interior edge value block of dim 3, and
  // 5 edge gradient blocks of dim 4.
  CHECK(d.n_dual == 35);
  CHECK(d.n_dual_total == 35 + 4 * 3);
  CHECK(d.n_primal == 6);
  CHECK(d.primal_block == 3);

  const DofMap c = build_dof_map(m, 2, 1, Variant::continuous);
  // 9 Lagrange nodes of which only the diagonal midpoint is free, plus the
  // same 20 gradient unknowns.
  CHECK(c.n_dual_total == 29);
  CHECK(c.n_dual == 21);
  CHECK(c.n_primal == 6);
}

TEST_CASE("unknown counts follow the closed-form formulas", "[system]") {
  const Mesh m = mesh_at_level(Domain::unit_square, 3);
  const int V = m.n_vertices(), E = m.n_edges(), T = m.n_triangles();
  int Eb = 0;
  for (const auto& e : m.edges) Eb += e.boundary() ? 1 : 0;
  int Vb = 0;
  for (bool b : m.boundary_vertices()) Vb += b ? 1 : 0;

  for (int k = 1; k <= 3; ++k) {
    const DofMap d = build_dof_map(m, k, k - 1, Variant::discontinuous);
    CHECK(d.n_dual ==
          T * poly_space_dim(k) + (E - Eb) * (k + 1) + E * 2 * k);
    CHECK(d.n_primal == T * poly_space_dim(k - 1));
  }
  for (int k = 2; k <= 3; ++k) {
    const DofMap c = build_dof_map(m, k, k - 1, Variant::continuous);
    const int nodes = V + E * (k - 1) + T * (k - 1) * (k - 2) / 2;
    const int pinned = Vb + Eb * (k - 1);
    CHECK(c.n_dual_total == nodes + E * 2 * k);
    CHECK(c.n_dual == nodes - pinned + E * 2 * k);
  }
}

TEST_CASE("side unknowns are single-valued across shared edges", "[system]") {
  const Mesh m = mesh_at_level(Domain::l_shape, 2);
  for (const Variant variant : {Variant::discontinuous, Variant::continuous}) {
    const int k = 2;
    const DofMap dof = build_dof_map(m, k, 1, variant);
    const WeakLayout layout(k, variant);
    for (int e = 0; e < m.n_edges(); ++e) {
      const Edge& edge = m.edges[e];
      if (edge.boundary()) continue;
      const auto side_of = [&](int t) {
        for (int s = 0; s < 3; ++s)
          if (m.triangle_edges[t][s] == e) return s;
        FAIL("edge not found in its own triangle");
        return -1;
      };
      const auto left = element_dual_dofs(dof, m, edge.left);
      const auto right = element_dual_dofs(dof, m, edge.right);
      const int sl = side_of(edge.left), sr = side_of(edge.right);
      if (variant == Variant::discontinuous)
        for (int i = 0; i < layout.side_value_dim; ++i)
          CHECK(left[layout.side_value_offset(sl) + i] ==
                right[layout.side_value_offset(sr) + i]);
      for (int c = 0; c < 2; ++c)
        for (int i = 0; i < layout.side_grad_dim; ++i)
          CHECK(left[layout.side_grad_offset(sl, c) + i] ==
                right[layout.side_grad_offset(sr, c) + i]);
    }
  }
}

TEST_CASE("stabilizer terms are symmetric positive semidefinite", "[system]") {
  const Mesh m = mesh_at_level(Domain::unit_square, 2);
  const ModelProblem p = catalog("case_const");
  for (const Variant variant : {Variant::discontinuous, Variant::continuous}) {
    const ElementGeometry g = element_geometry(m, 3);
    const auto terms = local_stabilizer_terms(g, p, 0, 2, variant, 8);
    for (const Eigen::MatrixXd& t : terms) {
      const double scale = std::max(1.0, t.cwiseAbs().maxCoeff());
      CHECK((t - t.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
      CHECK(es.eigenvalues().minCoeff() >= -1e-10 * scale);
    }
  }
}

TEST_CASE("stabilizer blocks carry the intended mesh-size weights", "[system]") {
  // Scaling an element by lambda multiplies each stabilizer block by a known
  // power of lambda: the basis functions are scale-invariant, boundary
  // integrals pick up lambda, interior gradients lambda^-1, and the explicit
  // h^-3 and h^-1 weights do the rest.
  const std::array<Point, 3> ref = {Point(0, 0), Point(1, 0), Point(0, 1)};
  const double lambda = 2.0;
  std::array<Point, 3> big;
  for (int i = 0; i < 3; ++i) big[i] = lambda * ref[i];
  const ElementGeometry g1 = element_geometry(ref);
  const ElementGeometry g2 = element_geometry(big);

  // mu = 0 keeps the strong term purely second order so it scales cleanly.
  const ModelProblem p = constant_problem(sample_a(), Point(0, 0));
  const int k = 2;
  const WeakLayout layout(k, Variant::discontinuous);
  const auto t1 = local_stabilizer_terms(g1, p, 0, k, Variant::discontinuous, 10);
  const auto t2 = local_stabilizer_terms(g2, p, 0, k, Variant::discontinuous, 10);

  const auto block_ratio = [&](const Eigen::MatrixXd& coarse, const Eigen::MatrixXd& fine,
                               int r0, int nr, int c0, int nc, double expect) {
    const Eigen::MatrixXd want = expect * coarse.block(r0, c0, nr, nc);
    const Eigen::MatrixXd got = fine.block(r0, c0, nr, nc);
    const double scale = std::max(1.0, want.cwiseAbs().maxCoeff());
    CHECK((got - want).cwiseAbs().maxCoeff() <= 1e-11 * scale);
  };

  // Value-jump term: every block scales by lambda^-2.
  block_ratio(t1[0], t2[0], 0, layout.size(), 0, layout.size(), 1.0 / (lambda * lambda));

  // Gradient-jump term: interior x interior lambda^-2, interior x side
  // gradient lambda^-1, side gradient x side gradient lambda^0.
  const int ni = layout.n_interior;
  const int gs = layout.side_grad_offset(0, 0);
  const int gn = 6 * layout.side_grad_dim;
  block_ratio(t1[1], t2[1], 0, ni, 0, ni, 1.0 / (lambda * lambda));
  block_ratio(t1[1], t2[1], 0, ni, gs, gn, 1.0 / lambda);
  block_ratio(t1[1], t2[1], gs, gn, gs, gn, 1.0);

  // Strong term with mu = 0 and constant a: lambda^-2 overall.
  block_ratio(t1[2], t2[2], 0, layout.size(), 0, layout.size(), 1.0 / (lambda * lambda));
}

TEST_CASE("coupling matrix matches direct quadrature against a polynomial", "[system]") {
  // For constant coefficients and w of degree <= k every weak operator of the
  // projected w reproduces the corresponding projected derivative exactly, so
  // B * flatten(Q_h w) must equal the moments (psi_m, L w)_T.
  const Mesh m = mesh_at_level(Domain::unit_square, 2);
  const Eigen::Matrix2d a = sample_a();
  const ModelProblem p = constant_problem(a, Point(1, 1));
  const int k = 2, s = 1;

  const auto w = [](const Point& x) {
    return x[0] * x[0] - 3.0 * x[0] * x[1] + 2.0 * x[0] + x[1] * x[1] + 5.0;
  };
  const auto grad_w = [](const Point& x) {
    return Point(2.0 * x[0] - 3.0 * x[1] + 2.0, -3.0 * x[0] + 2.0 * x[1]);
  };
  // L w = mu . grad w + 1/2 (a00 wxx + 2 a01 wxy + a11 wyy) = -x - y + 4.
  const auto Lw = [](const Point& x) { return -x[0] - x[1] + 4.0; };

  for (const Variant variant : {Variant::discontinuous, Variant::continuous}) {
    for (int t = 0; t < m.n_triangles(); ++t) {
      const ElementGeometry g = element_geometry(m, t);
      const WeakOperators ops = build_weak_operators(g, k, s, variant, 10);
      const Eigen::MatrixXd B = local_coupling(g, ops, p, 0, 10);
      const Eigen::VectorXd sigma =
          flatten(project_weak(w, grad_w, g, k, variant, 10), ops.layout);

      const QuadRule tq = triangle_rule(10);
      const TriBasis primal = element_basis(g, s);
      Eigen::VectorXd oracle = Eigen::VectorXd::Zero(primal.dim());
      const double jac = 2.0 * g.area;
      for (int q = 0; q < tq.size(); ++q) {
        const Point x = g.vertices[0] + tq.points(q, 0) * (g.vertices[1] - g.vertices[0]) +
                        tq.points(q, 1) * (g.vertices[2] - g.vertices[0]);
        oracle.noalias() += (jac * tq.weights[q] * Lw(x)) * primal.values(x);
      }
      const Eigen::VectorXd got = B * sigma;
      CHECK((got - oracle).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
}

TEST_CASE("load vector carries -(f, sigma_0) and the boundary flux term", "[system]") {
  const Mesh m = mesh_at_level(Domain::unit_square, 1);
  ModelProblem p = constant_problem(sample_a(), Point(1, 1));
  p.f = [](const Point&, RegionTag) { return 1.0; };
  p.g = [](const Point& x, RegionTag) { return x[0] + 2.0 * x[1]; };

  const int k = 2;
  const WeakLayout layout(k, Variant::discontinuous);
  const int t = 0;
  const ElementGeometry g = element_geometry(m, t);
  const Eigen::VectorXd F = local_load(g, m, t, p, 0, k, Variant::discontinuous, 12);

  // Interior block: -(1, sigma_0)_T is minus the first column of the mass
  // matrix (the coefficient vector of the constant 1 is e_0).
  const TriBasis basis = element_basis(g, k);
  const Eigen::MatrixXd M = mass_matrix(basis, g.vertices, triangle_rule(12));
  CHECK((F.segment(layout.interior_offset(), layout.n_interior) + M.col(0))
            .cwiseAbs()
            .maxCoeff() <= 1e-12);

  // Boundary sides: independent quadrature of 1/2 (a n)_j g P_i per side.
  const Eigen::Matrix2d a = sample_a();
  const EdgeBasis gb(k - 1);
  const QuadRule eq = edge_rule(12);
  for (int side = 0; side < 3; ++side) {
    const bool on_boundary = m.edges[m.triangle_edges[t][side]].boundary();
    for (int j = 0; j < 2; ++j) {
      Eigen::VectorXd want = Eigen::VectorXd::Zero(k);
      if (on_boundary) {
        const ElementSide& sd = g.sides[side];
        const Eigen::Vector2d an = 0.5 * (a.transpose() * Eigen::Vector2d(sd.normal));
        for (int q = 0; q < eq.size(); ++q) {
          const double tt = eq.points(q, 0);
          const Point x = sd.at(tt);
          want.noalias() +=
              (0.5 * sd.length * eq.weights[q] * an[j] * p.g(x, 0)) * gb.values(tt);
        }
      }
      const Eigen::VectorXd got = F.segment(layout.side_grad_offset(side, j), k);
      CHECK((got - want).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("assembled stabilizer block is symmetric positive semidefinite", "[system]") {
  const ModelProblem p = catalog("case_const");
  const Mesh m = mesh_at_level(Domain::unit_square, 2);
  for (const Variant variant : {Variant::discontinuous, Variant::continuous}) {
    const SaddleSystem sys = assemble(m, p, 2, 1, variant, 1.0, 0);
    const Eigen::MatrixXd S(sys.S);
    const double scale = S.cwiseAbs().maxCoeff();
    CHECK((S - S.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
    CHECK(es.eigenvalues().minCoeff() >= -1e-9 * scale);
  }
}

TEST_CASE("assembly is deterministic", "[system]") {
  const ModelProblem p = catalog("case_var");
  const Mesh m = mesh_at_level(Domain::unit_square, 2);
  const SaddleSystem s1 = assemble(m, p, 2, 1, Variant::discontinuous, 0.5, 0);
  const SaddleSystem s2 = assemble(m, p, 2, 1, Variant::discontinuous, 0.5, 0);
  CHECK(Eigen::MatrixXd(s1.S) == Eigen::MatrixXd(s2.S));
  CHECK(Eigen::MatrixXd(s1.B) == Eigen::MatrixXd(s2.B));
  CHECK(s1.F == s2.F);
}
