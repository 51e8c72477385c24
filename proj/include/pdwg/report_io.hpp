// Rendering of convergence reports as csv or markdown text. The csv column
// set is fixed; cells without a value (first-row orders, u columns for cases
// without an exact solution) are left empty.

#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdwg/study.hpp"

namespace pdwg {

enum class TableFormat { csv, markdown };

inline TableFormat parse_table_format(const std::string& name) {
  if (name == "csv") return TableFormat::csv;
  if (name == "markdown") return TableFormat::markdown;
  throw std::invalid_argument("unknown table format: " + name);
}

namespace detail {

inline std::string fmt_err(double v) {
  if (!std::isfinite(v)) return {};
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2e", v);
  return buf;
}

inline std::string fmt_order(double v) {
  if (!std::isfinite(v)) return {};
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

inline std::vector<std::string> row_cells(const ErrorRow& row, bool has_exact) {
  return {std::to_string(row.inv_h),
          fmt_err(row.rho0),
          fmt_order(row.rho0_order),
          fmt_err(row.rhog1),
          fmt_order(row.rhog1_order),
          has_exact ? fmt_err(row.u_err) : std::string{},
          has_exact ? fmt_order(row.u_order) : std::string{}};
}

inline std::string join(const std::vector<std::string>& cells, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += sep;
    out += cells[i];
  }
  return out;
}

}  // namespace detail

inline std::string emit_table(const ErrorReport& report, TableFormat format) {
  static const std::vector<std::string> header = {"inv_h", "rho0",  "rho0_order", "rhog1",
                                                  "rhog1_order", "u_err", "u_order"};
  std::string text;
  if (format == TableFormat::csv) {
    text = detail::join(header, ", ") + "\n";
    for (const ErrorRow& row : report.rows)
      text += detail::join(detail::row_cells(row, report.has_exact), ", ") + "\n";
    return text;
  }
  text = "| " + detail::join(header, " | ") + " |\n|";
  for (std::size_t i = 0; i < header.size(); ++i) text += " --- |";
  text += "\n";
  for (const ErrorRow& row : report.rows)
    text += "| " + detail::join(detail::row_cells(row, report.has_exact), " | ") + " |\n";
  return text;
}

}  // namespace pdwg
