// Conforming triangular meshes on the built-in polygonal domains, with the
// edge topology the weak-Galerkin spaces live on.
//
// Triangles are counterclockwise vertex triples. Every edge is stored once
// with a fixed parametrization (endpoint order) chosen by the first triangle
// that traverses it; the stored unit normal points out of that triangle.
// Functions on an edge are always expressed in this one parametrization, so
// edge unknowns are single-valued by construction and each adjacent element
// only has to flip the normal sign, never the parameter.
//
// Uniform refinement splits every triangle into four congruent children
// through the side midpoints; it preserves orientation and keeps children
// inside their parent, so meshes aligned with a coefficient interface stay
// aligned under refinement.

#pragma once

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdwg/geometry.hpp"

namespace pdwg {

/// One mesh edge. `v` lists the endpoint vertices in the parametrization
/// order (t = -1 at v[0], t = +1 at v[1]); `normal` is the unit normal
/// pointing out of triangle `left`, which traverses v[0] -> v[1] in its own
/// counterclockwise boundary walk.
struct Edge {
  std::array<int, 2> v{-1, -1};
  int left = -1;
  int right = -1;
  Point normal = Point::Zero();
  double length = 0.0;

  bool boundary() const { return right < 0; }
};

struct Mesh {
  std::vector<Point> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<Edge> edges;
  /// For each triangle, the edge ids of its sides (v0,v1), (v1,v2), (v2,v0).
  std::vector<std::array<int, 3>> triangle_edges;

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_triangles() const { return static_cast<int>(triangles.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }

  std::array<Point, 3> triangle_vertices(int t) const {
    const auto& tri = triangles[t];
    return {vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]};
  }

  double element_area(int t) const {
    const auto v = triangle_vertices(t);
    return triangle_area(v[0], v[1], v[2]);
  }

  double element_diameter(int t) const {
    const auto v = triangle_vertices(t);
    return triangle_diameter(v[0], v[1], v[2]);
  }

  Point element_centroid(int t) const {
    const auto v = triangle_vertices(t);
    return triangle_centroid(v[0], v[1], v[2]);
  }

  /// +1 if side `s` of triangle `t` runs along its edge's parametrization,
  /// -1 if it runs against it (then `t` is the edge's `right` triangle).
  int edge_orientation(int t, int s) const {
    const auto& tri = triangles[t];
    const Edge& e = edges[triangle_edges[t][s]];
    return e.v[0] == tri[s] ? +1 : -1;
  }

  /// Unit normal of side `s` pointing out of triangle `t`.
  Point outward_normal(int t, int s) const {
    return edge_orientation(t, s) * edges[triangle_edges[t][s]].normal;
  }

  /// Mean mesh size proxy: the largest element diameter.
  double max_diameter() const {
    double h = 0.0;
    for (int t = 0; t < n_triangles(); ++t) h = std::max(h, element_diameter(t));
    return h;
  }

  /// True for every vertex lying on a boundary edge.
  std::vector<bool> boundary_vertices() const {
    std::vector<bool> on(vertices.size(), false);
    for (const Edge& e : edges)
      if (e.boundary()) on[e.v[0]] = on[e.v[1]] = true;
    return on;
  }
};

namespace detail {

/// Rebuild the edge list and per-triangle edge ids from the vertex triples.
/// Triangles are visited in ascending order; the first traversal of an edge
/// fixes its parametrization and `left` triangle.
inline void build_edges(Mesh& mesh) {
  mesh.edges.clear();
  mesh.triangle_edges.assign(mesh.triangles.size(), {-1, -1, -1});
  std::map<std::pair<int, int>, int> index;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    for (int s = 0; s < 3; ++s) {
      const int p = tri[s], q = tri[(s + 1) % 3];
      const auto key = std::minmax(p, q);
      auto it = index.find(key);
      if (it == index.end()) {
        Edge e;
        e.v = {p, q};
        e.left = t;
        e.normal = edge_normal(mesh.vertices[p], mesh.vertices[q]);
        e.length = (mesh.vertices[q] - mesh.vertices[p]).norm();
        index.emplace(key, mesh.n_edges());
        mesh.triangle_edges[t][s] = mesh.n_edges();
        mesh.edges.push_back(e);
      } else {
        Edge& e = mesh.edges[it->second];
        if (e.right >= 0 || e.v[0] != q || e.v[1] != p)
          throw std::runtime_error("mesh: non-conforming or inconsistently oriented triangles");
        e.right = t;
        mesh.triangle_edges[t][s] = it->second;
      }
    }
  }
}

}  // namespace detail

/// Built-in domains: the unit square (0,1)^2, the concentric square (-1,1)^2
/// whose mesh lines contain both coordinate axes, and the L-shaped region
/// (0,2)^2 minus the closed upper-right unit square.
enum class Domain { unit_square, square2, l_shape };

inline const char* domain_name(Domain d) {
  switch (d) {
    case Domain::unit_square: return "unit_square";
    case Domain::square2: return "square2";
    case Domain::l_shape: return "l_shape";
  }
  throw std::invalid_argument("domain_name: unknown domain");
}

inline Domain parse_domain(const std::string& name) {
  if (name == "unit_square") return Domain::unit_square;
  if (name == "square2") return Domain::square2;
  if (name == "l_shape") return Domain::l_shape;
  throw std::invalid_argument("unknown domain '" + name + "'");
}

/// Coarsest mesh of a built-in domain. Each constituent unit square is split
/// into two triangles by its southwest-northeast diagonal; all triangles are
/// counterclockwise.
inline Mesh initial_mesh(Domain domain) {
  Mesh mesh;
  auto add_square = [&mesh](const std::map<std::pair<int, int>, int>& ids,
                            int x, int y) {
    const int sw = ids.at({x, y}), se = ids.at({x + 1, y});
    const int ne = ids.at({x + 1, y + 1}), nw = ids.at({x, y + 1});
    mesh.triangles.push_back({sw, se, ne});
    mesh.triangles.push_back({sw, ne, nw});
  };
  auto build = [&](const std::vector<std::pair<int, int>>& corners,
                   const std::vector<std::pair<int, int>>& squares,
                   const Point& offset) {
    std::map<std::pair<int, int>, int> ids;
    for (const auto& c : corners) {
      ids[c] = mesh.n_vertices();
      mesh.vertices.push_back(Point(c.first, c.second) + offset);
    }
    for (const auto& s : squares) add_square(ids, s.first, s.second);
  };
  switch (domain) {
    case Domain::unit_square:
      build({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, {{0, 0}}, Point::Zero());
      break;
    case Domain::square2: {
      std::vector<std::pair<int, int>> corners, squares;
      for (int y = 0; y <= 2; ++y)
        for (int x = 0; x <= 2; ++x) corners.push_back({x, y});
      for (int y = 0; y < 2; ++y)
        for (int x = 0; x < 2; ++x) squares.push_back({x, y});
      build(corners, squares, Point(-1.0, -1.0));
      break;
    }
    case Domain::l_shape:
      build({{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}, {0, 2}, {1, 2}},
            {{0, 0}, {1, 0}, {0, 1}}, Point::Zero());
      break;
  }
  detail::build_edges(mesh);
  return mesh;
}

/// Split every triangle into the four congruent children through its side
/// midpoints. Midpoints are shared exactly across neighbours (computed once
/// per edge), so the result is conforming.
inline Mesh refine_uniform(const Mesh& mesh) {
  Mesh fine;
  fine.vertices = mesh.vertices;
  std::map<std::pair<int, int>, int> midpoint;
  auto midpoint_id = [&](int a, int b) {
    const auto key = std::minmax(a, b);
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    const int id = fine.n_vertices();
    fine.vertices.push_back(0.5 * (mesh.vertices[key.first] + mesh.vertices[key.second]));
    midpoint.emplace(key, id);
    return id;
  };
  fine.triangles.reserve(4 * mesh.triangles.size());
  for (const auto& tri : mesh.triangles) {
    const int m01 = midpoint_id(tri[0], tri[1]);
    const int m12 = midpoint_id(tri[1], tri[2]);
    const int m20 = midpoint_id(tri[2], tri[0]);
    fine.triangles.push_back({tri[0], m01, m20});
    fine.triangles.push_back({m01, tri[1], m12});
    fine.triangles.push_back({m20, m12, tri[2]});
    fine.triangles.push_back({m01, m12, m20});
  }
  detail::build_edges(fine);
  return fine;
}

/// Initial mesh refined `level - 1` times, so the structured mesh size obeys
/// 1/h_level = 2^(level-1) relative to the coarsest mesh.
inline Mesh mesh_at_level(Domain domain, int level) {
  if (level < 1) throw std::invalid_argument("mesh_at_level: level must be >= 1");
  Mesh mesh = initial_mesh(domain);
  for (int l = 1; l < level; ++l) mesh = refine_uniform(mesh);
  return mesh;
}

/// Check the structural invariants and throw std::runtime_error on the first
/// violation: positive (counterclockwise) triangle areas, interior edges with
/// exactly two consistently oriented triangles, normals pointing out of the
/// `left` triangle, and the Euler relation V - E + T = 1 of a simply
/// connected triangulated polygon.
inline void validate(const Mesh& mesh) {
  for (int t = 0; t < mesh.n_triangles(); ++t)
    if (!(mesh.element_area(t) > 0.0))
      throw std::runtime_error("mesh: triangle " + std::to_string(t) +
                               " is degenerate or clockwise");
  if (mesh.n_vertices() - mesh.n_edges() + mesh.n_triangles() != 1)
    throw std::runtime_error("mesh: Euler relation V - E + T = 1 violated");
  for (int e = 0; e < mesh.n_edges(); ++e) {
    const Edge& edge = mesh.edges[e];
    if (edge.left < 0) throw std::runtime_error("mesh: edge without a triangle");
    const Point a = mesh.vertices[edge.v[0]], b = mesh.vertices[edge.v[1]];
    if ((edge.normal - edge_normal(a, b)).norm() > 1e-14)
      throw std::runtime_error("mesh: stored normal inconsistent with endpoints");
    // The normal must point away from the left triangle's interior.
    const Point c = mesh.element_centroid(edge.left);
    if (edge.normal.dot(edge_point(a, b, 0.0) - c) <= 0.0)
      throw std::runtime_error("mesh: normal does not point out of the left triangle");
  }
  for (int t = 0; t < mesh.n_triangles(); ++t)
    for (int s = 0; s < 3; ++s) {
      const int e = mesh.triangle_edges[t][s];
      if (e < 0 || (mesh.edges[e].left != t && mesh.edges[e].right != t))
        throw std::runtime_error("mesh: triangle/edge adjacency broken");
    }
}

// ---------------------------------------------------------------------------
// Text serialization ("pdwg-mesh v1"): vertices, triangles, then one record
// per edge (endpoints and boundary flag) which import re-derives and checks.
// ---------------------------------------------------------------------------

inline void write_mesh(const Mesh& mesh, std::ostream& out) {
  out << "pdwg-mesh v1\n";
  out.precision(17);
  out << "vertices " << mesh.n_vertices() << "\n";
  for (const Point& v : mesh.vertices) out << v.x() << " " << v.y() << "\n";
  out << "triangles " << mesh.n_triangles() << "\n";
  for (const auto& t : mesh.triangles) out << t[0] << " " << t[1] << " " << t[2] << "\n";
  out << "edges " << mesh.n_edges() << "\n";
  for (const Edge& e : mesh.edges)
    out << e.v[0] << " " << e.v[1] << " " << (e.boundary() ? 1 : 0) << "\n";
}

inline void write_mesh(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_mesh(mesh, out);
}

inline Mesh read_mesh(std::istream& in) {
  auto fail = [](const std::string& why) -> std::runtime_error {
    return std::runtime_error("mesh import: " + why);
  };
  std::string line;
  if (!std::getline(in, line) || line != "pdwg-mesh v1")
    throw fail("missing 'pdwg-mesh v1' header");
  auto read_count = [&](const std::string& keyword) {
    std::string word;
    long count = -1;
    if (!(in >> word >> count) || word != keyword || count < 0)
      throw fail("expected '" + keyword + " <count>'");
    return count;
  };
  Mesh mesh;
  const long nv = read_count("vertices");
  mesh.vertices.resize(nv);
  for (auto& v : mesh.vertices)
    if (!(in >> v.x() >> v.y())) throw fail("truncated vertex list");
  const long nt = read_count("triangles");
  mesh.triangles.resize(nt);
  for (auto& t : mesh.triangles) {
    if (!(in >> t[0] >> t[1] >> t[2])) throw fail("truncated triangle list");
    for (int i : t)
      if (i < 0 || i >= nv) throw fail("triangle vertex id out of range");
  }
  detail::build_edges(mesh);
  validate(mesh);
  // The edge section is redundant on purpose: re-derive and cross-check it.
  const long ne = read_count("edges");
  if (ne != mesh.n_edges())
    throw fail("edge count " + std::to_string(ne) + " does not match the " +
               std::to_string(mesh.n_edges()) + " edges the triangles induce");
  std::set<std::tuple<int, int, int>> listed, derived;
  for (long i = 0; i < ne; ++i) {
    int a, b, flag;
    if (!(in >> a >> b >> flag) || (flag != 0 && flag != 1))
      throw fail("truncated or malformed edge list");
    listed.insert({std::min(a, b), std::max(a, b), flag});
  }
  for (const Edge& e : mesh.edges)
    derived.insert({std::min(e.v[0], e.v[1]), std::max(e.v[0], e.v[1]),
                    e.boundary() ? 1 : 0});
  if (listed != derived)
    throw fail("edge records disagree with the triangle topology");
  return mesh;
}

inline Mesh read_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return read_mesh(in);
}

}  // namespace pdwg
