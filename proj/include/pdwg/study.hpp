// Convergence-study harness: solve a model case on a sequence of uniformly
// refined meshes and tabulate errors with observed orders. The mesh at level
// L has 1/h = 2^(L-1) along each unit square edge of the domain.

#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdwg/norms.hpp"
#include "pdwg/problems.hpp"
#include "pdwg/solver.hpp"

namespace pdwg {

struct RunConfig {
  std::string case_id = "case_const";
  int k = 2;
  int s = 1;
  Variant variant = Variant::discontinuous;
  double delta = 1.0;
  int levels = 5;
  /// Domain override; when unset the case's default domain is used.
  bool domain_set = false;
  Domain domain = Domain::unit_square;
  /// Quadrature exactness override, 0 for the automatic 2k+2 default.
  int quad_degree = 0;
  double residual_tol = 1e-9;
};

inline Domain run_domain(const ModelProblem& p, const RunConfig& cfg) {
  return cfg.domain_set ? cfg.domain : p.default_domain;
}

inline int quadrature_degree_for(const RunConfig& cfg) {
  return cfg.quad_degree > 0 ? cfg.quad_degree : 2 * cfg.k + 2;
}

/// Everything produced at one refinement level, kept for field and system
/// output after the convergence loop.
struct LevelSolution {
  Mesh mesh;
  SaddleSystem system;
  SolutionPair solution;
  NormReport norms;
};

inline LevelSolution solve_level(const ModelProblem& p, const RunConfig& cfg, int level) {
  check_orders(cfg.k, cfg.s);
  LevelSolution out;
  out.mesh = mesh_at_level(run_domain(p, cfg), level);
  out.system = assemble(out.mesh, p, cfg.k, cfg.s, cfg.variant, cfg.delta,
                        quadrature_degree_for(cfg));
  out.solution = solve_saddle(out.system, cfg.residual_tol);
  out.norms = compute_norms(out.mesh, p, out.system, out.solution);
  return out;
}

struct ErrorRow {
  int inv_h = 0;
  double rho0 = 0.0;
  double rho0_order = std::numeric_limits<double>::quiet_NaN();
  double rhog1 = 0.0;
  double rhog1_order = std::numeric_limits<double>::quiet_NaN();
  double u_err = std::numeric_limits<double>::quiet_NaN();
  double u_order = std::numeric_limits<double>::quiet_NaN();
  double residual = 0.0;
};

struct ErrorReport {
  bool has_exact = false;  ///< whether the u columns carry values
  std::vector<ErrorRow> rows;
};

namespace detail {

/// log2 ratio of consecutive errors; NaN when either value is unusable
/// (zero errors occur in patch-test configurations).
inline double observed_order(double coarse, double fine) {
  if (!(coarse > 0.0) || !(fine > 0.0) || !std::isfinite(coarse) || !std::isfinite(fine))
    return std::numeric_limits<double>::quiet_NaN();
  return std::log2(coarse / fine);
}

}  // namespace detail

/// Solve levels 1..cfg.levels and tabulate errors with observed orders.
/// Requires at least two levels so every order column has an entry.
inline ErrorReport run_convergence(const ModelProblem& p, const RunConfig& cfg,
                                   std::vector<LevelSolution>* keep_last = nullptr) {
  if (cfg.levels < 2)
    throw std::invalid_argument("run_convergence: need at least 2 levels");
  ErrorReport report;
  report.has_exact = p.has_exact() && cfg.s <= 1;
  for (int level = 1; level <= cfg.levels; ++level) {
    LevelSolution ls = solve_level(p, cfg, level);
    ErrorRow row;
    row.inv_h = 1 << (level - 1);
    row.rho0 = ls.norms.rho0;
    row.rhog1 = ls.norms.rhog1;
    row.u_err = ls.norms.u_err;
    row.residual = ls.solution.residual;
    if (!report.rows.empty()) {
      const ErrorRow& prev = report.rows.back();
      row.rho0_order = detail::observed_order(prev.rho0, row.rho0);
      row.rhog1_order = detail::observed_order(prev.rhog1, row.rhog1);
      row.u_order = detail::observed_order(prev.u_err, row.u_err);
    }
    report.rows.push_back(row);
    if (keep_last) {
      if (level == cfg.levels)
        keep_last->push_back(std::move(ls));
    }
  }
  return report;
}

}  // namespace pdwg
