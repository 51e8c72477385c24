// Command-line driver: convergence studies with table/field/system output,
// plus a mesh export/import utility. The convergence table goes to stdout;
// everything diagnostic (configuration echo, per-level residuals, the
// Cordes report) goes to stderr so stdout stays machine-readable.
//
// Exit codes: 0 success, 2 solver or I/O failure, 3 bad arguments.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "pdwg/field_io.hpp"
#include "pdwg/report_io.hpp"
#include "pdwg/study.hpp"
#include "pdwg/system_io.hpp"

namespace {

std::vector<pdwg::Point> cordes_samples(pdwg::Domain domain) {
  // Element centroids of a moderately fine mesh cover every region of the
  // piecewise-defined tensors without stepping outside the domain.
  const pdwg::Mesh m = pdwg::mesh_at_level(domain, 4);
  std::vector<pdwg::Point> pts;
  pts.reserve(m.n_triangles());
  for (int t = 0; t < m.n_triangles(); ++t) pts.push_back(m.element_centroid(t));
  return pts;
}

int run_study(const std::string& case_id, const std::string& variant_name,
              const std::string& domain_name_opt, const std::string& format_name,
              const std::string& out_dir, bool dump_system_flag, pdwg::RunConfig cfg) {
  const pdwg::ModelProblem problem = pdwg::catalog(case_id);
  cfg.case_id = case_id;
  cfg.variant = pdwg::parse_variant(variant_name);
  if (!domain_name_opt.empty()) {
    cfg.domain = pdwg::parse_domain(domain_name_opt);
    cfg.domain_set = true;
  }
  pdwg::check_orders(cfg.k, cfg.s);
  const pdwg::TableFormat format = pdwg::parse_table_format(format_name);
  if (dump_system_flag && out_dir.empty())
    throw std::invalid_argument("--dump-system requires --out");

  const pdwg::Domain domain = pdwg::run_domain(problem, cfg);
  std::cerr << "case=" << case_id << " domain=" << pdwg::domain_name(domain)
            << " k=" << cfg.k << " s=" << cfg.s << " variant=" << pdwg::variant_name(cfg.variant)
            << " delta=" << cfg.delta << " levels=" << cfg.levels << "\n";

  const pdwg::CordesReport cordes = pdwg::cordes_check(problem, cordes_samples(domain));
  std::cerr << "cordes: epsilon_max=" << cordes.epsilon_max
            << (cordes.satisfied ? " (satisfied)" : " (NOT satisfied)") << "\n";

  std::vector<pdwg::LevelSolution> finest;
  const pdwg::ErrorReport report = pdwg::run_convergence(problem, cfg, &finest);
  for (const pdwg::ErrorRow& row : report.rows)
    std::cerr << "level 1/h=" << row.inv_h << " residual=" << row.residual << "\n";

  const std::string table = pdwg::emit_table(report, format);
  std::cout << table;

  if (!out_dir.empty()) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    const std::string ext = format == pdwg::TableFormat::csv ? ".csv" : ".md";
    {
      std::ofstream os(dir / ("report" + ext));
      if (!os) throw std::runtime_error("cannot write report in " + out_dir);
      os << table;
    }
    const pdwg::LevelSolution& last = finest.back();
    pdwg::emit_field_file((dir / "u.vtk").string(), last.mesh, last.system.dof,
                          last.solution.u, pdwg::FieldFormat::vtk_legacy);
    pdwg::emit_field_file((dir / "u_points.csv").string(), last.mesh, last.system.dof,
                          last.solution.u, pdwg::FieldFormat::csv_points);
    pdwg::write_mesh(last.mesh, (dir / "mesh.txt").string());
    if (dump_system_flag) pdwg::dump_system((dir / "system").string(), last.mesh, last.system);
    std::cerr << "artifacts written to " << out_dir << "\n";
  }
  return 0;
}

int run_mesh(const std::string& domain_name_opt, int level, const std::string& in_file,
             const std::string& out_file) {
  pdwg::Mesh mesh;
  if (!in_file.empty()) {
    mesh = pdwg::read_mesh(in_file);
  } else {
    if (domain_name_opt.empty())
      throw std::invalid_argument("mesh: need either --in or --domain/--level");
    mesh = pdwg::mesh_at_level(pdwg::parse_domain(domain_name_opt), level);
  }
  pdwg::validate(mesh);
  if (!out_file.empty()) pdwg::write_mesh(mesh, out_file);
  std::cout << "vertices=" << mesh.n_vertices() << " edges=" << mesh.n_edges()
            << " triangles=" << mesh.n_triangles() << " h_max=" << mesh.max_diameter()
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"primal-dual weak Galerkin solver for second-order equations in "
               "nondivergence form"};
  app.require_subcommand(1);

  // run: convergence study
  auto* run = app.add_subcommand("run", "run a convergence study");
  std::string case_id = "case_const", variant_name = "cminus1", domain_opt, format_name = "csv";
  std::string out_dir;
  bool dump_system_flag = false;
  pdwg::RunConfig cfg;
  run->set_config("--config", "", "key=value file mirroring the flags; flags win");
  run->add_option("--case", case_id, "model case id");
  run->add_option("--k", cfg.k, "dual polynomial degree (>= 1)");
  run->add_option("--s", cfg.s, "primal polynomial degree (k-1 or k-2)");
  run->add_option("--variant", variant_name, "element family: cminus1 or c0");
  run->add_option("--delta", cfg.delta, "stabilizer strong-term weight");
  run->add_option("--levels", cfg.levels, "number of uniform refinement levels (>= 2)");
  run->add_option("--domain", domain_opt, "domain override: unit_square, square2, l_shape");
  run->add_option("--out", out_dir, "directory for report/field/mesh artifacts");
  run->add_option("--format", format_name, "table format: csv or markdown");
  run->add_flag("--dump-system", dump_system_flag, "also write saddle matrix + dof legend");
  run->add_option("--quad-degree", cfg.quad_degree, "quadrature exactness override");

  // mesh: export/import utility
  auto* mesh_cmd = app.add_subcommand("mesh", "generate, validate, or convert meshes");
  std::string mesh_domain, mesh_in, mesh_out;
  int mesh_level = 1;
  mesh_cmd->add_option("--domain", mesh_domain, "built-in domain id");
  mesh_cmd->add_option("--level", mesh_level, "refinement level (1 = initial mesh)");
  mesh_cmd->add_option("--in", mesh_in, "read and validate a mesh file");
  mesh_cmd->add_option("--out", mesh_out, "write the mesh to a file");

  try {
    app.parse(argc, argv);
    if (run->parsed())
      return run_study(case_id, variant_name, domain_opt, format_name, out_dir,
                       dump_system_flag, cfg);
    return run_mesh(mesh_domain, mesh_level, mesh_in, mesh_out);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
