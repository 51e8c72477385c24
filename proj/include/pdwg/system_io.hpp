// Debug dump of the assembled saddle system: the full matrix in MatrixMarket
// coordinate form plus a plain-text legend naming each unknown, so external
// tools can inspect conditioning and block structure.

#pragma once

#include <Eigen/Sparse>
#include <fstream>
#include <stdexcept>
#include <string>

#include "pdwg/assembly.hpp"

namespace pdwg {

inline void write_matrix_market(std::ostream& os, const Eigen::SparseMatrix<double>& A) {
  os << "%%MatrixMarket matrix coordinate real general\n";
  os << A.rows() << ' ' << A.cols() << ' ' << A.nonZeros() << '\n';
  os.precision(17);
  for (int o = 0; o < A.outerSize(); ++o)
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, o); it; ++it)
      os << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value() << '\n';
}

/// One line per unknown of the saddle system, in row order: the dual block
/// first, then the primal block.
inline void write_dof_legend(std::ostream& os, const Mesh& mesh, const DofMap& dof) {
  std::vector<std::string> names(dof.n_dual);
  if (dof.variant == Variant::discontinuous) {
    for (int t = 0; t < mesh.n_triangles(); ++t)
      for (int i = 0; i < poly_space_dim(dof.k); ++i)
        names[dof.interior_dof[t] + i] = "dual interior element " + std::to_string(t) +
                                         " coeff " + std::to_string(i);
    for (int e = 0; e < mesh.n_edges(); ++e) {
      if (dof.edge_value_dof[e] < 0) continue;
      for (int i = 0; i <= dof.k; ++i)
        names[dof.edge_value_dof[e] + i] = "dual side value edge " + std::to_string(e) +
                                           " coeff " + std::to_string(i);
    }
  } else {
    for (std::size_t n = 0; n < dof.node_dof.size(); ++n) {
      if (dof.node_dof[n] < 0) continue;
      names[dof.node_dof[n]] = "dual interior node " + std::to_string(n);
    }
  }
  for (int e = 0; e < mesh.n_edges(); ++e)
    for (int c = 0; c < 2; ++c)
      for (int i = 0; i < dof.k; ++i)
        names[dof.edge_grad_dof[e] + c * dof.k + i] =
            "dual side gradient edge " + std::to_string(e) + " comp " + std::to_string(c) +
            " coeff " + std::to_string(i);
  for (int r = 0; r < dof.n_dual; ++r) os << r << ": " << names[r] << '\n';
  for (int t = 0; t < mesh.n_triangles(); ++t)
    for (int i = 0; i < dof.primal_block; ++i)
      os << dof.n_dual + dof.primal_offset(t) + i << ": primal element " << t << " coeff "
         << i << '\n';
}

/// Write <prefix>.mtx and <prefix>.dofs.txt for one assembled system.
inline void dump_system(const std::string& prefix, const Mesh& mesh, const SaddleSystem& sys) {
  {
    std::ofstream os(prefix + ".mtx");
    if (!os) throw std::runtime_error("cannot open " + prefix + ".mtx");
    Eigen::SparseMatrix<double> A = saddle_matrix(sys);
    A.makeCompressed();
    write_matrix_market(os, A);
  }
  std::ofstream os(prefix + ".dofs.txt");
  if (!os) throw std::runtime_error("cannot open " + prefix + ".dofs.txt");
  write_dof_legend(os, mesh, sys.dof);
}

}  // namespace pdwg
