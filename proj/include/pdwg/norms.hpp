// Error measures for a computed solution pair: the broken L2 norm of the
// dual interior component, the scaled side norm of the dual gradient
// component, and the L2 distance between the primal solution and the nodal
// interpolant of the exact solution.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "pdwg/assembly.hpp"
#include "pdwg/problems.hpp"
#include "pdwg/solver.hpp"

namespace pdwg {

struct NormReport {
  double rho0 = 0.0;   ///< element-wise L2 norm of the dual interior part
  double rhog1 = 0.0;  ///< side norm of the dual gradient, h_T-weighted
  /// L2 norm of u_h minus the nodal interpolant; NaN when the case carries
  /// no exact solution (or s is outside the interpolant's range).
  double u_err = std::numeric_limits<double>::quiet_NaN();
};

/// Compute all three norms for a solved system. Each interior edge is visited
/// once per adjacent element, with that element's own diameter as weight, so
/// the side norm counts shared sides twice by design.
inline NormReport compute_norms(const Mesh& mesh, const ModelProblem& problem,
                                const SaddleSystem& sys, const SolutionPair& sol) {
  const DofMap& dof = sys.dof;
  NormReport out;

  const QuadRule cell_rule = triangle_rule(std::max(2, 2 * dof.k));
  double rho0_sq = 0.0;
  double rhog_sq = 0.0;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const ElementGeometry g = element_geometry(mesh, t);
    const TriBasis basis = element_basis(g, dof.k);
    const Eigen::VectorXd c = element_interior_coeffs(dof, mesh, t, sol.rho);
    const Eigen::MatrixXd M = mass_matrix(basis, g.vertices, cell_rule);
    rho0_sq += c.dot(M * c);

    const double h = g.diameter;
    for (int side = 0; side < 3; ++side) {
      const int e = mesh.triangle_edges[t][side];
      const double len = mesh.edges[e].length;
      for (int comp = 0; comp < 2; ++comp) {
        const int base = dof.edge_grad_dof[e] + comp * dof.k;
        for (int i = 0; i < dof.k; ++i) {
          const double ci = sol.rho[base + i];
          rhog_sq += h * ci * ci * len / (2.0 * i + 1.0);
        }
      }
    }
  }
  out.rho0 = std::sqrt(rho0_sq);
  out.rhog1 = std::sqrt(rhog_sq);

  if (!problem.has_exact() || dof.s > 1) return out;

  const Eigen::VectorXd interp = nodal_interpolant(problem, mesh, dof.s);
  const QuadRule primal_rule = triangle_rule(std::max(2, 2 * dof.s));
  const int ns = poly_space_dim(dof.s);
  double u_sq = 0.0;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const ElementGeometry g = element_geometry(mesh, t);
    const TriBasis basis = element_basis(g, dof.s);
    const Eigen::VectorXd d = sol.u.segment(dof.primal_offset(t), ns) -
                              interp.segment(static_cast<Eigen::Index>(t) * ns, ns);
    const Eigen::MatrixXd M = mass_matrix(basis, g.vertices, primal_rule);
    u_sq += d.dot(M * d);
  }
  out.u_err = std::sqrt(u_sq);
  return out;
}

}  // namespace pdwg
