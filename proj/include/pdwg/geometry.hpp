// Small planar-geometry helpers shared by the mesh and the local calculus:
// signed area, centroid, diameter, and the fixed edge parametrization used
// everywhere (t in [-1,1] running from the first endpoint to the second).

#pragma once

#include <Eigen/Dense>
#include <array>

namespace pdwg {

using Point = Eigen::Vector2d;

/// Signed area of triangle (a, b, c); positive iff the vertices are
/// counterclockwise.
inline double triangle_area(const Point& a, const Point& b, const Point& c) {
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) -
                (c.x() - a.x()) * (b.y() - a.y()));
}

inline Point triangle_centroid(const Point& a, const Point& b, const Point& c) {
  return (a + b + c) / 3.0;
}

/// Diameter of a triangle, i.e. its longest side.
inline double triangle_diameter(const Point& a, const Point& b, const Point& c) {
  return std::max({(b - a).norm(), (c - b).norm(), (a - c).norm()});
}

/// Point on the segment a -> b at parameter t in [-1,1] (t = -1 at a, +1 at b).
inline Point edge_point(const Point& a, const Point& b, double t) {
  return 0.5 * (1.0 - t) * a + 0.5 * (1.0 + t) * b;
}

/// Unit normal to the segment a -> b obtained by rotating the direction b - a
/// clockwise by 90 degrees. For a counterclockwise triangle this points out of
/// the triangle on each of its sides.
inline Point edge_normal(const Point& a, const Point& b) {
  Point d = b - a;
  const double len = d.norm();
  return Point(d.y() / len, -d.x() / len);
}

}  // namespace pdwg
