// Primal field emission for external viewers. Legacy-vtk output writes the
// piecewise constant field as cell data; for s >= 1 every element gets its
// own copy of its vertices so discontinuities across edges render as-is
// instead of being averaged by the viewer.

#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "pdwg/dof_map.hpp"
#include "pdwg/weak_space.hpp"

namespace pdwg {

enum class FieldFormat { vtk_legacy, csv_points };

inline FieldFormat parse_field_format(const std::string& name) {
  if (name == "vtk_legacy") return FieldFormat::vtk_legacy;
  if (name == "csv_points") return FieldFormat::csv_points;
  throw std::invalid_argument("unknown field format: " + name);
}

namespace detail {

inline void write_vtk_field(std::ostream& os, const Mesh& mesh, const DofMap& dof,
                            const Eigen::VectorXd& u) {
  const int nt = mesh.n_triangles();
  os << "# vtk DataFile Version 3.0\n"
     << "pdwg primal field\n"
     << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
  os.precision(17);
  if (dof.s == 0) {
    os << "POINTS " << mesh.n_vertices() << " double\n";
    for (const Point& v : mesh.vertices) os << v.x() << ' ' << v.y() << " 0\n";
    os << "CELLS " << nt << ' ' << 4 * nt << '\n';
    for (const auto& tri : mesh.triangles)
      os << "3 " << tri[0] << ' ' << tri[1] << ' ' << tri[2] << '\n';
    os << "CELL_TYPES " << nt << '\n';
    for (int t = 0; t < nt; ++t) os << "5\n";
    os << "CELL_DATA " << nt << "\nSCALARS u_h double 1\nLOOKUP_TABLE default\n";
    for (int t = 0; t < nt; ++t) os << u[dof.primal_offset(t)] << '\n';
    return;
  }
  os << "POINTS " << 3 * nt << " double\n";
  for (int t = 0; t < nt; ++t)
    for (const Point& v : mesh.triangle_vertices(t)) os << v.x() << ' ' << v.y() << " 0\n";
  os << "CELLS " << nt << ' ' << 4 * nt << '\n';
  for (int t = 0; t < nt; ++t)
    os << "3 " << 3 * t << ' ' << 3 * t + 1 << ' ' << 3 * t + 2 << '\n';
  os << "CELL_TYPES " << nt << '\n';
  for (int t = 0; t < nt; ++t) os << "5\n";
  os << "POINT_DATA " << 3 * nt << "\nSCALARS u_h double 1\nLOOKUP_TABLE default\n";
  for (int t = 0; t < nt; ++t) {
    const ElementGeometry g = element_geometry(mesh, t);
    const TriBasis basis = element_basis(g, dof.s);
    const Eigen::VectorXd coeffs = u.segment(dof.primal_offset(t), dof.primal_block);
    for (const Point& v : g.vertices) os << basis.evaluate(coeffs, v) << '\n';
  }
}

inline void write_csv_points(std::ostream& os, const Mesh& mesh, const DofMap& dof,
                             const Eigen::VectorXd& u) {
  os.precision(17);
  os << "x,y,u\n";
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const ElementGeometry g = element_geometry(mesh, t);
    const Eigen::VectorXd coeffs = u.segment(dof.primal_offset(t), dof.primal_block);
    if (dof.s == 0) {
      os << g.centroid.x() << ',' << g.centroid.y() << ',' << coeffs[0] << '\n';
      continue;
    }
    const TriBasis basis = element_basis(g, dof.s);
    for (const Point& v : g.vertices)
      os << v.x() << ',' << v.y() << ',' << basis.evaluate(coeffs, v) << '\n';
  }
}

}  // namespace detail

inline void emit_field(std::ostream& os, const Mesh& mesh, const DofMap& dof,
                       const Eigen::VectorXd& u, FieldFormat format) {
  if (format == FieldFormat::vtk_legacy)
    detail::write_vtk_field(os, mesh, dof, u);
  else
    detail::write_csv_points(os, mesh, dof, u);
}

inline void emit_field_file(const std::string& path, const Mesh& mesh, const DofMap& dof,
                            const Eigen::VectorXd& u, FieldFormat format) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open field output file: " + path);
  emit_field(os, mesh, dof, u, format);
  if (!os.good()) throw std::runtime_error("write failed for field output file: " + path);
}

}  // namespace pdwg
