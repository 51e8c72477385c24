// Table rendering, field emission, and the saddle-system debug dump.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "pdwg/field_io.hpp"
#include "pdwg/report_io.hpp"
#include "pdwg/solver.hpp"
#include "pdwg/system_io.hpp"

using namespace pdwg;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("empty report renders as a header-only csv", "[cli]") {
  const ErrorReport report;
  CHECK(emit_table(report, TableFormat::csv) ==
        "inv_h, rho0, rho0_order, rhog1, rhog1_order, u_err, u_order\n");
}

TEST_CASE("csv rows render in the contract format", "[cli]") {
  ErrorReport report;
  report.has_exact = true;
  ErrorRow first;
  first.inv_h = 16;
  first.rho0 = 1.87e-05;
  first.rhog1 = 2.36e-03;
  first.u_err = 8.93e-04;
  ErrorRow row;
  row.inv_h = 32;
  row.rho0 = 1.2043e-06;
  row.rho0_order = 3.9541;
  row.rhog1 = 3.0449e-04;
  row.rhog1_order = 2.9551;
  row.u_err = 2.2299e-04;
  row.u_order = 2.0017;
  report.rows = {first, row};
  const auto lines = lines_of(emit_table(report, TableFormat::csv));
  REQUIRE(lines.size() == 3);
  CHECK(lines[1] == "16, 1.87e-05, , 2.36e-03, , 8.93e-04, ");
  CHECK(lines[2] == "32, 1.20e-06, 3.95, 3.04e-04, 2.96, 2.23e-04, 2.00");
}

TEST_CASE("u columns stay empty without an exact solution", "[cli]") {
  ErrorReport report;
  report.has_exact = false;
  ErrorRow row;
  row.inv_h = 4;
  row.rho0 = 1.0e-02;
  row.rho0_order = 2.0;
  row.rhog1 = 3.0e-02;
  row.rhog1_order = 1.5;
  row.u_err = 0.5;  // must be ignored
  row.u_order = 9.0;
  report.rows = {row};
  const auto lines = lines_of(emit_table(report, TableFormat::csv));
  CHECK(lines[1] == "4, 1.00e-02, 2.00, 3.00e-02, 1.50, , ");
}

TEST_CASE("markdown table has a pipe row per level", "[cli]") {
  ErrorReport report;
  report.has_exact = true;
  ErrorRow row;
  row.inv_h = 2;
  row.rho0 = 0.25;
  row.rhog1 = 0.5;
  row.u_err = 0.125;
  report.rows = {row};
  const auto lines = lines_of(emit_table(report, TableFormat::markdown));
  REQUIRE(lines.size() == 3);
  CHECK(lines[0].find("| inv_h |") == 0);
  CHECK(lines[1].find("---") != std::string::npos);
  CHECK(lines[2].find("| 2 | 2.50e-01 |") == 0);
}

TEST_CASE("table format names parse and reject", "[cli]") {
  CHECK(parse_table_format("csv") == TableFormat::csv);
  CHECK(parse_table_format("markdown") == TableFormat::markdown);
  CHECK_THROWS_AS(parse_table_format("tsv"), std::invalid_argument);
  CHECK(parse_field_format("vtk_legacy") == FieldFormat::vtk_legacy);
  CHECK(parse_field_format("csv_points") == FieldFormat::csv_points);
  CHECK_THROWS_AS(parse_field_format("vtu"), std::invalid_argument);
}

TEST_CASE("vtk output duplicates points per element for s = 1", "[cli]") {
  const Mesh m = mesh_at_level(Domain::unit_square, 1);
  ModelProblem p;
  p.id = "test_linear";
  p.a = [](const Point&, RegionTag) { return Eigen::Matrix2d::Identity(); };
  p.mu = [](const Point&, RegionTag) { return Point(0, 0); };
  p.f = [](const Point&, RegionTag) { return 0.0; };
  p.g = [](const Point&, RegionTag) { return 0.0; };
  p.exact = [](const Point& x, RegionTag) { return x[0] + x[1]; };
  p.region_rule = [](const Point&) { return 0; };

  const DofMap dof = build_dof_map(m, 2, 1, Variant::discontinuous);
  const Eigen::VectorXd u = nodal_interpolant(p, m, 1);

  std::ostringstream os;
  emit_field(os, m, dof, u, FieldFormat::vtk_legacy);
  const auto lines = lines_of(os.str());
  REQUIRE(lines.size() >= 10);
  CHECK(lines[0] == "# vtk DataFile Version 3.0");
  CHECK(lines[2] == "ASCII");
  CHECK(lines[3] == "DATASET UNSTRUCTURED_GRID");
  CHECK(lines[4] == "POINTS 6 double");
  CHECK(lines[11] == "CELLS 2 8");
  CHECK(lines[14] == "CELL_TYPES 2");
  CHECK(lines[17] == "POINT_DATA 6");
  // Point data equals x + y at each duplicated element vertex.
  std::size_t coord_start = 5, data_start = 20;
  for (int i = 0; i < 6; ++i) {
    std::istringstream cs(lines[coord_start + i]);
    double x, y, z;
    cs >> x >> y >> z;
    CHECK(std::abs(std::stod(lines[data_start + i]) - (x + y)) <= 1e-12);
  }
}

TEST_CASE("vtk output uses cell data for s = 0", "[cli]") {
  const Mesh m = mesh_at_level(Domain::unit_square, 2);
  const DofMap dof = build_dof_map(m, 1, 0, Variant::discontinuous);
  Eigen::VectorXd u(dof.n_primal);
  for (int t = 0; t < m.n_triangles(); ++t) u[t] = 10.0 + t;
  std::ostringstream os;
  emit_field(os, m, dof, u, FieldFormat::vtk_legacy);
  const std::string text = os.str();
  CHECK(text.find("POINTS 9 double") != std::string::npos);
  CHECK(text.find("CELL_DATA 8") != std::string::npos);
  CHECK(text.find("POINT_DATA") == std::string::npos);
  const auto lines = lines_of(text);
  CHECK(std::stod(lines.back()) == 10.0 + m.n_triangles() - 1);
}

TEST_CASE("csv points carry one centroid row per element for s = 0", "[cli]") {
  const Mesh m = mesh_at_level(Domain::unit_square, 1);
  const DofMap dof = build_dof_map(m, 1, 0, Variant::discontinuous);
  Eigen::VectorXd u(2);
  u << 4.0, 7.0;
  std::ostringstream os;
  emit_field(os, m, dof, u, FieldFormat::csv_points);
  const auto lines = lines_of(os.str());
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "x,y,u");
  CHECK(lines[1].find(",4") != std::string::npos);
  CHECK(lines[2].find(",7") != std::string::npos);
}

TEST_CASE("system dump writes a consistent matrix and legend", "[cli]") {
  const Mesh m = mesh_at_level(Domain::unit_square, 1);
  const SaddleSystem sys = assemble(m, catalog("case_const"), 2, 1,
                                    Variant::discontinuous, 1.0, 0);
  const auto dir = std::filesystem::temp_directory_path() / "pdwg_dump_test";
  std::filesystem::create_directories(dir);
  const std::string prefix = (dir / "system").string();
  dump_system(prefix, m, sys);

  std::ifstream mtx(prefix + ".mtx");
  REQUIRE(mtx.good());
  std::string header;
  std::getline(mtx, header);
  CHECK(header == "%%MatrixMarket matrix coordinate real general");
  int rows = 0, cols = 0;
  long nnz = 0;
  mtx >> rows >> cols >> nnz;
  const int n = sys.dof.n_dual + sys.dof.n_primal;
  CHECK(rows == n);
  CHECK(cols == n);
  long counted = 0;
  int i, j;
  double v;
  while (mtx >> i >> j >> v) {
    CHECK(i >= 1);
    CHECK(i <= rows);
    CHECK(j >= 1);
    CHECK(j <= cols);
    ++counted;
  }
  CHECK(counted == nnz);

  std::ifstream legend(prefix + ".dofs.txt");
  REQUIRE(legend.good());
  int legend_lines = 0;
  std::string line;
  while (std::getline(legend, line)) ++legend_lines;
  CHECK(legend_lines == n);
  std::filesystem::remove_all(dir);
}
