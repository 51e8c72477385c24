// Local structure of the weak discrete spaces.
//
// A dual-space function on one element is a triple: an interior polynomial of
// degree k, a polynomial value of degree k on each side, and a vector-valued
// polynomial of degree k-1 on each side standing in for the boundary trace of
// the gradient. Two variants are supported. In the fully discontinuous
// variant all three pieces are independent unknowns. In the continuous
// variant the interior polynomials are globally continuous and the side value
// is their trace, so it carries no unknowns of its own; only the interior and
// side-gradient pieces remain.
//
// Side polynomials live in the owning edge's fixed parametrization and the
// side-gradient components are Cartesian, so every piece is single-valued
// across elements by construction.

#pragma once

#include <Eigen/Dense>
#include <array>
#include <stdexcept>
#include <string>

#include "pdwg/basis.hpp"
#include "pdwg/geometry.hpp"
#include "pdwg/mesh.hpp"

namespace pdwg {

enum class Variant { discontinuous, continuous };

inline const char* variant_name(Variant v) {
  return v == Variant::discontinuous ? "cminus1" : "c0";
}

inline Variant parse_variant(const std::string& name) {
  if (name == "cminus1") return Variant::discontinuous;
  if (name == "c0") return Variant::continuous;
  throw std::invalid_argument("unknown variant '" + name + "' (expected cminus1 or c0)");
}

/// Validate a primal/dual degree pair: the dual degree k is at least 1 and
/// the primal degree s is k-1 or k-2 (and nonnegative).
inline void check_orders(int k, int s) {
  if (k < 1)
    throw std::invalid_argument("dual degree k must be >= 1, got " + std::to_string(k));
  if (s < 0 || (s != k - 1 && s != k - 2))
    throw std::invalid_argument("primal degree s must be k-1 or k-2 and >= 0, got s=" +
                                std::to_string(s) + " with k=" + std::to_string(k));
}

/// Index layout of one element's dual-space coefficients, flattened as
/// [interior | side values (3 sides) | side gradients (3 sides x 2 Cartesian
/// components)]. The side-value blocks exist only in the discontinuous
/// variant; interior coefficients are always monomial coefficients here (a
/// nodal representation, if any, is converted before reaching this layer).
struct WeakLayout {
  int k;
  Variant variant;
  int n_interior;
  int side_value_dim;
  int side_grad_dim;

  WeakLayout(int k_, Variant variant_)
      : k(k_),
        variant(variant_),
        n_interior(poly_space_dim(k_)),
        side_value_dim(variant_ == Variant::discontinuous ? k_ + 1 : 0),
        side_grad_dim(k_) {
    if (k < 1) throw std::invalid_argument("WeakLayout: k must be >= 1");
  }

  int size() const { return n_interior + 3 * side_value_dim + 6 * side_grad_dim; }
  int interior_offset() const { return 0; }
  int side_value_offset(int side) const { return n_interior + side * side_value_dim; }
  int side_grad_offset(int side, int comp) const {
    return n_interior + 3 * side_value_dim + (2 * side + comp) * side_grad_dim;
  }
};

/// One element's dual-space function with its pieces spelled out. Interior
/// coefficients are monomial coefficients in the element basis; side pieces
/// are Legendre coefficients in the side's parametrization.
struct LocalWeakFunction {
  Eigen::VectorXd interior;
  std::array<Eigen::VectorXd, 3> side_value;
  std::array<std::array<Eigen::VectorXd, 2>, 3> side_grad;
};

inline Eigen::VectorXd flatten(const LocalWeakFunction& f, const WeakLayout& layout) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(layout.size());
  x.segment(layout.interior_offset(), layout.n_interior) = f.interior;
  for (int side = 0; side < 3; ++side) {
    if (layout.side_value_dim > 0)
      x.segment(layout.side_value_offset(side), layout.side_value_dim) = f.side_value[side];
    for (int c = 0; c < 2; ++c)
      x.segment(layout.side_grad_offset(side, c), layout.side_grad_dim) = f.side_grad[side][c];
  }
  return x;
}

/// One side of an element: endpoints in the owning edge's parametrization
/// order and the unit normal pointing out of this element.
struct ElementSide {
  Point a = Point::Zero();
  Point b = Point::Zero();
  double length = 0.0;
  Point normal = Point::Zero();

  Point at(double t) const { return edge_point(a, b, t); }
};

/// Everything the local calculus needs to know about one element. Built
/// either from a mesh (sides keep their edge's shared parametrization) or
/// from a bare counterclockwise vertex triple for standalone use.
struct ElementGeometry {
  std::array<Point, 3> vertices;
  Point centroid = Point::Zero();
  double diameter = 0.0;
  double area = 0.0;
  std::array<ElementSide, 3> sides;
};

inline ElementGeometry element_geometry(const std::array<Point, 3>& v) {
  ElementGeometry g;
  g.vertices = v;
  g.centroid = triangle_centroid(v[0], v[1], v[2]);
  g.diameter = triangle_diameter(v[0], v[1], v[2]);
  g.area = triangle_area(v[0], v[1], v[2]);
  if (!(g.area > 0.0))
    throw std::invalid_argument("element_geometry: vertices must be counterclockwise");
  for (int s = 0; s < 3; ++s) {
    ElementSide& side = g.sides[s];
    side.a = v[s];
    side.b = v[(s + 1) % 3];
    side.length = (side.b - side.a).norm();
    side.normal = edge_normal(side.a, side.b);
  }
  return g;
}

inline ElementGeometry element_geometry(const Mesh& mesh, int t) {
  ElementGeometry g;
  g.vertices = mesh.triangle_vertices(t);
  g.centroid = triangle_centroid(g.vertices[0], g.vertices[1], g.vertices[2]);
  g.diameter = triangle_diameter(g.vertices[0], g.vertices[1], g.vertices[2]);
  g.area = triangle_area(g.vertices[0], g.vertices[1], g.vertices[2]);
  for (int s = 0; s < 3; ++s) {
    const Edge& e = mesh.edges[mesh.triangle_edges[t][s]];
    ElementSide& side = g.sides[s];
    side.a = mesh.vertices[e.v[0]];
    side.b = mesh.vertices[e.v[1]];
    side.length = e.length;
    side.normal = mesh.outward_normal(t, s);
  }
  return g;
}

/// The element polynomial basis every local space is expressed in: monomials
/// centered at the centroid and scaled by half the element diameter, which
/// keeps local coordinates of order one and Gram matrices well conditioned.
/// Every discrete quantity the solver produces is invariant to this constant.
inline TriBasis element_basis(const ElementGeometry& g, int degree) {
  return TriBasis(degree, g.centroid, 0.5 * g.diameter);
}

}  // namespace pdwg
