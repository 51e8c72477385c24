// Catalog of model problems for the convection-diffusion equation in
// nondivergence form,
//     div(mu u) - 1/2 sum_ij d2_ij (a_ij u) = f   in Omega,   u = g on the boundary,
// together with the ellipticity diagnostic and the piecewise-polynomial
// interpolant the error studies compare against.
//
// Discontinuous diffusion tensors are handled with region tags: every field
// takes the evaluation point and a tag, and the tag of an element is fixed by
// its centroid (never by pointwise tests at quadrature nodes, which would be
// ill-defined on the interface itself). Meshes derived from the centered
// square keep every element inside one region, so tags are well defined.
//
// Loads for manufactured solutions are hand-derived closed forms; the test
// suite cross-checks them against a finite-difference application of the
// operator to the exact solution.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdwg/mesh.hpp"
#include "pdwg/weak_space.hpp"

namespace pdwg {

using RegionTag = int;

/// One model problem. All coefficient fields are smooth within a region;
/// `exact` is present only when the case has a known solution.
struct ModelProblem {
  std::string id;
  Domain default_domain = Domain::unit_square;
  std::function<Eigen::Matrix2d(const Point&, RegionTag)> a;
  std::function<Point(const Point&, RegionTag)> mu;
  std::function<double(const Point&, RegionTag)> f;
  std::function<double(const Point&, RegionTag)> g;
  std::function<double(const Point&, RegionTag)> exact;
  std::function<RegionTag(const Point&)> region_rule;

  bool has_exact() const { return static_cast<bool>(exact); }
  RegionTag tag_of(const Point& centroid) const { return region_rule(centroid); }
};

inline const std::vector<std::string>& known_cases() {
  static const std::vector<std::string> ids = {
      "case_const",      "case_var",      "case_disc_const",
      "case_disc_sine",  "case_quadrant", "case_disc_const_drift"};
  return ids;
}

inline ModelProblem catalog(const std::string& case_id) {
  auto one_region = [](const Point&) { return 0; };
  auto split_x = [](const Point& c) { return c.x() < 0.0 ? 0 : 1; };

  ModelProblem p;
  p.id = case_id;
  if (case_id == "case_const") {
    p.default_domain = Domain::unit_square;
    p.region_rule = one_region;
    p.a = [](const Point&, RegionTag) {
      Eigen::Matrix2d a;
      a << 3.0, 1.0, 1.0, 2.0;
      return a;
    };
    p.mu = [](const Point&, RegionTag) { return Point(1.0, 1.0); };
    p.exact = [](const Point& x, RegionTag) { return std::sin(x.x()) * std::sin(x.y()); };
    // f = mu . grad u - 1/2 sum a_ij d2_ij u with the tensor above:
    //   = cos*sin + sin*cos + (5/2) sin*sin - cos*cos.
    p.f = [](const Point& x, RegionTag) {
      const double s1 = std::sin(x.x()), c1 = std::cos(x.x());
      const double s2 = std::sin(x.y()), c2 = std::cos(x.y());
      return c1 * s2 + s1 * c2 + 2.5 * s1 * s2 - c1 * c2;
    };
    p.g = p.exact;
  } else if (case_id == "case_var") {
    p.default_domain = Domain::unit_square;
    p.region_rule = one_region;
    p.a = [](const Point& x, RegionTag) {
      Eigen::Matrix2d a;
      a << 1.0 + x.x() * x.x(), 0.25 * x.x() * x.y(), 0.25 * x.x() * x.y(),
          1.0 + x.y() * x.y();
      return a;
    };
    p.mu = [](const Point& x, RegionTag) { return Point(x.x(), x.y()); };
    p.exact = [](const Point& x, RegionTag) { return std::sin(x.x()) * std::sin(x.y()); };
    // With mu = x the divergence term is 2u + x . grad u; expanding the
    // second-order term for this tensor leaves
    //   f = [3/4 + (x1^2 + x2^2)/2] sin*sin - (5/4) x1 cos*sin
    //       - (5/4) x2 sin*cos - (1/4) x1 x2 cos*cos.
    p.f = [](const Point& x, RegionTag) {
      const double s1 = std::sin(x.x()), c1 = std::cos(x.x());
      const double s2 = std::sin(x.y()), c2 = std::cos(x.y());
      return (0.75 + 0.5 * (x.x() * x.x() + x.y() * x.y())) * s1 * s2 -
             1.25 * x.x() * c1 * s2 - 1.25 * x.y() * s1 * c2 -
             0.25 * x.x() * x.y() * c1 * c2;
    };
    p.g = p.exact;
  } else if (case_id == "case_disc_const" || case_id == "case_disc_const_drift") {
    p.default_domain = Domain::square2;
    p.region_rule = split_x;
    p.a = [](const Point&, RegionTag tag) {
      return Eigen::Matrix2d((tag == 0 ? 1.0 : 2.0) * Eigen::Matrix2d::Identity());
    };
    const bool drift = case_id == "case_disc_const_drift";
    p.mu = [drift](const Point&, RegionTag) {
      return drift ? Point(1.0, 1.0) : Point(0.0, 0.0);
    };
    p.f = [](const Point&, RegionTag) { return 0.0; };
    p.g = [](const Point&, RegionTag tag) { return tag == 0 ? 2.0 : 1.0; };
    // The piecewise constant is the solution only without drift: the flux
    // alpha * u = 2 is then single-valued across the interface.
    if (!drift) p.exact = [](const Point&, RegionTag tag) { return tag == 0 ? 2.0 : 1.0; };
  } else if (case_id == "case_disc_sine") {
    p.default_domain = Domain::square2;
    p.region_rule = split_x;
    p.a = [](const Point&, RegionTag tag) {
      return Eigen::Matrix2d((tag == 0 ? 1.0 : 2.0) * Eigen::Matrix2d::Identity());
    };
    p.mu = [](const Point&, RegionTag) { return Point(0.0, 0.0); };
    // u = 2 sin(3 x2) left of the interface, sin(3 x2) right of it; with
    // a = alpha I and no drift, f = (9/2) alpha A sin(3 x2) = 9 sin(3 x2)
    // on both sides.
    p.f = [](const Point& x, RegionTag) { return 9.0 * std::sin(3.0 * x.y()); };
    p.exact = [](const Point& x, RegionTag tag) {
      return (tag == 0 ? 2.0 : 1.0) * std::sin(3.0 * x.y());
    };
    p.g = p.exact;
  } else if (case_id == "case_quadrant") {
    p.default_domain = Domain::square2;
    // alpha = 1 where x1 x2 > 0 (first and third quadrants), 10 elsewhere.
    p.region_rule = [](const Point& c) { return c.x() * c.y() > 0.0 ? 0 : 1; };
    p.a = [](const Point&, RegionTag tag) {
      return Eigen::Matrix2d((tag == 0 ? 1.0 : 10.0) * Eigen::Matrix2d::Identity());
    };
    p.mu = [](const Point&, RegionTag) { return Point(1.0, 1.0); };
    p.f = [](const Point&, RegionTag) { return 0.25; };
    p.g = [](const Point&, RegionTag) { return 0.0; };
  } else {
    throw std::invalid_argument("unknown case '" + case_id + "'");
  }
  return p;
}

/// Result of sampling the ellipticity (Cordes) condition
///   sum_ij a_ij^2 / (sum_i a_ii)^2 <= 1 / (d - 1 + eps),   d = 2:
/// the largest admissible eps over all samples, clamped into (0, 1].
struct CordesReport {
  double epsilon_max = 0.0;
  Point worst_point = Point::Zero();
  bool satisfied = false;
};

inline CordesReport cordes_check(const ModelProblem& p, const std::vector<Point>& samples) {
  CordesReport report;
  if (samples.empty()) return report;
  double worst = std::numeric_limits<double>::infinity();
  for (const Point& x : samples) {
    const Eigen::Matrix2d a = p.a(x, p.tag_of(x));
    const double frob2 = a.squaredNorm();
    const double trace2 = a.trace() * a.trace();
    const double eps = trace2 / frob2 - 1.0;  // d - 1 = 1 in two dimensions
    if (eps < worst) {
      worst = eps;
      report.worst_point = x;
    }
  }
  report.epsilon_max = std::min(worst, 1.0);
  report.satisfied = report.epsilon_max > 0.0;
  return report;
}

/// Piecewise-polynomial interpolant of the exact solution in the primal
/// space: elementwise linear through the vertex values (s = 1) or constant
/// at the centroid value (s = 0). Every element evaluates the solution with
/// its own region tag, which is what makes the interpolant well defined for
/// piecewise-smooth solutions with mesh-aligned interfaces. The result is
/// blocked per element in the element monomial basis.
inline Eigen::VectorXd nodal_interpolant(const ModelProblem& p, const Mesh& mesh, int s) {
  if (s != 0 && s != 1)
    throw std::invalid_argument("nodal_interpolant: only s in {0,1} is supported");
  if (!p.has_exact())
    throw std::invalid_argument("nodal_interpolant: case has no exact solution");
  const int block = poly_space_dim(s);
  Eigen::VectorXd result(block * mesh.n_triangles());
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const ElementGeometry g = element_geometry(mesh, t);
    const RegionTag tag = p.tag_of(g.centroid);
    if (s == 0) {
      result[t] = p.exact(g.centroid, tag);
    } else {
      const TriBasis basis = element_basis(g, 1);
      Eigen::Matrix3d V;
      Eigen::Vector3d vals;
      for (int v = 0; v < 3; ++v) {
        V.row(v) = basis.values(g.vertices[v]).transpose();
        vals[v] = p.exact(g.vertices[v], tag);
      }
      result.segment<3>(3 * t) = V.fullPivLu().solve(vals);
    }
  }
  return result;
}

}  // namespace pdwg
