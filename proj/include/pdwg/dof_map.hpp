// Global unknown numbering for the primal-dual pair.
//
// Dual space (the Lagrange-multiplier-like variable rho): per-element
// interior polynomials of degree k, per-edge values of degree k, and per-edge
// gradient surrogates of degree k-1 (two Cartesian components). Edge values
// on the outer boundary are the homogeneous essential constraint of the dual
// space and carry no unknowns. In the continuous variant the interior
// polynomials are glued into a globally continuous Lagrange space whose
// boundary nodes are pinned instead, and the per-edge values disappear as
// separate unknowns.
//
// Primal space (u): one block of monomial coefficients of degree s per
// element, unconstrained.
//
// Layouts are deterministic: ascending element and edge indices, components
// in x-then-y order, so assembled systems are reproducible bit for bit.

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "pdwg/mesh.hpp"
#include "pdwg/weak_space.hpp"

namespace pdwg {

struct DofMap {
  Variant variant = Variant::discontinuous;
  int k = 0;
  int s = 0;
  int n_dual = 0;        ///< free dual unknowns
  int n_dual_total = 0;  ///< including constrained-to-zero boundary pieces
  int n_primal = 0;
  int primal_block = 0;  ///< dim P_s per element

  /// Discontinuous variant: start of each element's interior block.
  std::vector<int> interior_dof;
  /// Start of each edge's value block, -1 for boundary (constrained) edges
  /// and in the continuous variant.
  std::vector<int> edge_value_dof;
  /// Start of each edge's gradient block: component c occupies
  /// [start + c*k, start + (c+1)*k).
  std::vector<int> edge_grad_dof;

  /// Continuous variant: Lagrange node bookkeeping. Nodes are numbered
  /// vertices first, then k-1 nodes per edge (in the edge's parametrization
  /// order), then interior lattice nodes per element.
  std::vector<int> node_dof;  ///< node -> dual dof, -1 on the boundary
  std::vector<Point> node_position;
  std::vector<std::vector<int>> element_nodes;  ///< per element, local order
  /// Per element, the change of basis taking nodal values to monomial
  /// coefficients in the element basis.
  std::vector<Eigen::MatrixXd> nodal_to_monomial;

  int primal_offset(int element) const { return element * primal_block; }
};

inline DofMap build_dof_map(const Mesh& mesh, int k, int s, Variant variant) {
  check_orders(k, s);
  DofMap dof;
  dof.variant = variant;
  dof.k = k;
  dof.s = s;
  dof.primal_block = poly_space_dim(s);
  dof.n_primal = dof.primal_block * mesh.n_triangles();

  int next = 0;
  if (variant == Variant::discontinuous) {
    const int n0 = poly_space_dim(k);
    dof.interior_dof.resize(mesh.n_triangles());
    for (int t = 0; t < mesh.n_triangles(); ++t, next += n0) dof.interior_dof[t] = next;
    dof.edge_value_dof.assign(mesh.n_edges(), -1);
    for (int e = 0; e < mesh.n_edges(); ++e)
      if (!mesh.edges[e].boundary()) {
        dof.edge_value_dof[e] = next;
        next += k + 1;
      }
  } else {
    // Lagrange nodes of the continuous interior space.
    const auto on_boundary = mesh.boundary_vertices();
    for (int v = 0; v < mesh.n_vertices(); ++v) dof.node_position.push_back(mesh.vertices[v]);
    std::vector<bool> node_constrained(mesh.n_vertices());
    for (int v = 0; v < mesh.n_vertices(); ++v) node_constrained[v] = on_boundary[v];
    const int edge_nodes = k - 1;
    for (int e = 0; e < mesh.n_edges(); ++e) {
      const Point a = mesh.vertices[mesh.edges[e].v[0]];
      const Point b = mesh.vertices[mesh.edges[e].v[1]];
      for (int j = 1; j <= edge_nodes; ++j) {
        dof.node_position.push_back(a + (static_cast<double>(j) / k) * (b - a));
        node_constrained.push_back(mesh.edges[e].boundary());
      }
    }
    const int interior_nodes = (k - 1) * (k - 2) / 2;
    dof.element_nodes.resize(mesh.n_triangles());
    for (int t = 0; t < mesh.n_triangles(); ++t) {
      auto& nodes = dof.element_nodes[t];
      for (int v = 0; v < 3; ++v) nodes.push_back(mesh.triangles[t][v]);
      for (int side = 0; side < 3; ++side) {
        const int e = mesh.triangle_edges[t][side];
        for (int j = 0; j < edge_nodes; ++j)
          nodes.push_back(mesh.n_vertices() + e * edge_nodes + j);
      }
      const auto v = mesh.triangle_vertices(t);
      for (int i = 1; i + 1 < k; ++i)
        for (int j = 1; i + j <= k - 1; ++j) {
          nodes.push_back(static_cast<int>(dof.node_position.size()));
          dof.node_position.push_back(v[0] + (static_cast<double>(i) / k) * (v[1] - v[0]) +
                                      (static_cast<double>(j) / k) * (v[2] - v[0]));
          node_constrained.push_back(false);
        }
      (void)interior_nodes;
    }
    dof.node_dof.assign(dof.node_position.size(), -1);
    for (size_t n = 0; n < dof.node_position.size(); ++n)
      if (!node_constrained[n]) dof.node_dof[n] = next++;
    // Nodal-to-monomial change of basis per element (inverse Vandermonde).
    dof.nodal_to_monomial.resize(mesh.n_triangles());
    for (int t = 0; t < mesh.n_triangles(); ++t) {
      const ElementGeometry g = element_geometry(mesh, t);
      const TriBasis basis = element_basis(g, k);
      const auto& nodes = dof.element_nodes[t];
      Eigen::MatrixXd V(basis.dim(), basis.dim());
      for (int n = 0; n < basis.dim(); ++n)
        V.row(n) = basis.values(dof.node_position[nodes[n]]).transpose();
      Eigen::FullPivLU<Eigen::MatrixXd> lu(V);
      if (!lu.isInvertible())
        throw std::runtime_error("build_dof_map: degenerate Lagrange node set");
      dof.nodal_to_monomial[t] = lu.inverse();
    }
    dof.edge_value_dof.assign(mesh.n_edges(), -1);
  }
  dof.edge_grad_dof.resize(mesh.n_edges());
  for (int e = 0; e < mesh.n_edges(); ++e) {
    dof.edge_grad_dof[e] = next;
    next += 2 * k;
  }
  dof.n_dual = next;
  dof.n_dual_total = next;
  if (variant == Variant::discontinuous) {
    for (int e = 0; e < mesh.n_edges(); ++e)
      if (mesh.edges[e].boundary()) dof.n_dual_total += k + 1;
  } else {
    for (int d : dof.node_dof)
      if (d < 0) ++dof.n_dual_total;
  }
  return dof;
}

/// Global dual indices of one element's local coefficients, aligned with
/// WeakLayout(k, variant) after the element's nodal transform (continuous) or
/// directly (discontinuous). -1 marks a constrained-to-zero coefficient.
inline std::vector<int> element_dual_dofs(const DofMap& dof, const Mesh& mesh, int t) {
  const WeakLayout layout(dof.k, dof.variant);
  std::vector<int> global(layout.size(), -1);
  if (dof.variant == Variant::discontinuous) {
    const int n0 = layout.n_interior;
    for (int i = 0; i < n0; ++i) global[layout.interior_offset() + i] = dof.interior_dof[t] + i;
    for (int side = 0; side < 3; ++side) {
      const int e = mesh.triangle_edges[t][side];
      if (dof.edge_value_dof[e] >= 0)
        for (int i = 0; i < layout.side_value_dim; ++i)
          global[layout.side_value_offset(side) + i] = dof.edge_value_dof[e] + i;
    }
  } else {
    const auto& nodes = dof.element_nodes[t];
    for (int i = 0; i < layout.n_interior; ++i)
      global[layout.interior_offset() + i] = dof.node_dof[nodes[i]];
  }
  for (int side = 0; side < 3; ++side) {
    const int e = mesh.triangle_edges[t][side];
    for (int c = 0; c < 2; ++c)
      for (int i = 0; i < layout.side_grad_dim; ++i)
        global[layout.side_grad_offset(side, c) + i] = dof.edge_grad_dof[e] + c * dof.k + i;
  }
  return global;
}

/// Monomial coefficients of the dual interior polynomial on one element,
/// reading constrained pieces as zero.
inline Eigen::VectorXd element_interior_coeffs(const DofMap& dof, const Mesh& mesh, int t,
                                               const Eigen::VectorXd& rho) {
  const int n0 = poly_space_dim(dof.k);
  if (dof.variant == Variant::discontinuous) return rho.segment(dof.interior_dof[t], n0);
  Eigen::VectorXd nodal(n0);
  const auto& nodes = dof.element_nodes[t];
  for (int i = 0; i < n0; ++i) {
    const int d = dof.node_dof[nodes[i]];
    nodal[i] = d >= 0 ? rho[d] : 0.0;
  }
  return dof.nodal_to_monomial[t] * nodal;
}

}  // namespace pdwg
