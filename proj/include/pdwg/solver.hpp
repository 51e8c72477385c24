// Direct solution of the assembled saddle-point system with an explicit
// residual check. The sparse path is a deterministic unsymmetric LU
// (column-ordered); a dense full-pivot LU is provided as an independent
// oracle for small systems.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <stdexcept>
#include <string>

#include "pdwg/assembly.hpp"

namespace pdwg {

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// The factorization reported a structurally or numerically singular matrix.
struct SingularSystemError : SolverError {
  using SolverError::SolverError;
};
/// The factorization succeeded but the solution fails the residual contract.
struct ResidualError : SolverError {
  using SolverError::SolverError;
};

struct SolutionPair {
  Eigen::VectorXd rho;  ///< dual coefficients (free unknowns only)
  Eigen::VectorXd u;    ///< primal coefficients, blocked per element
  double residual = 0.0;  ///< relative residual of the full system
};

namespace detail {

inline SolutionPair split_solution(const SaddleSystem& sys, const Eigen::VectorXd& x,
                                   const Eigen::SparseMatrix<double>& A,
                                   const Eigen::VectorXd& b, double residual_tol) {
  SolutionPair sol;
  sol.residual = (A * x - b).norm() / std::max(1.0, b.norm());
  if (!(sol.residual <= residual_tol))
    throw ResidualError("saddle solve residual " + std::to_string(sol.residual) +
                        " exceeds tolerance " + std::to_string(residual_tol));
  sol.rho = x.head(sys.dof.n_dual);
  sol.u = x.tail(sys.dof.n_primal);
  return sol;
}

}  // namespace detail

/// Solve the saddle system with sparse LU. Throws SingularSystemError if the
/// factorization fails and ResidualError if the relative residual of the
/// full system exceeds `residual_tol`.
inline SolutionPair solve_saddle(const SaddleSystem& sys, double residual_tol = 1e-9) {
  Eigen::SparseMatrix<double> A = saddle_matrix(sys);
  A.makeCompressed();
  const Eigen::VectorXd b = saddle_rhs(sys);
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(A);
  lu.factorize(A);
  if (lu.info() != Eigen::Success)
    throw SingularSystemError("sparse LU factorization failed: " + lu.lastErrorMessage());
  const Eigen::VectorXd x = lu.solve(b);
  if (lu.info() != Eigen::Success)
    throw SingularSystemError("sparse LU back-substitution failed");
  return detail::split_solution(sys, x, A, b, residual_tol);
}

/// Dense full-pivot oracle for small systems (tests compare it against the
/// sparse path). Refuses systems of 500 unknowns or more.
inline SolutionPair solve_saddle_dense(const SaddleSystem& sys, double residual_tol = 1e-9) {
  const int n = sys.dof.n_dual + sys.dof.n_primal;
  if (n >= 500)
    throw std::invalid_argument("solve_saddle_dense: oracle limited to < 500 unknowns");
  Eigen::SparseMatrix<double> As = saddle_matrix(sys);
  const Eigen::MatrixXd A = Eigen::MatrixXd(As);
  const Eigen::VectorXd b = saddle_rhs(sys);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (!lu.isInvertible()) throw SingularSystemError("dense LU: singular saddle system");
  const Eigen::VectorXd x = lu.solve(b);
  return detail::split_solution(sys, x, As, b, residual_tol);
}

}  // namespace pdwg
