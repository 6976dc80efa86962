#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "mhdidp/dg/cases.hpp"
#include "mhdidp/dg/solver.hpp"
#include "mhdidp/dy_limiter.hpp"

namespace mhdidp::io {

/// Malformed input; line() is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Header for vector dimension n, e.g. "rho,m1,m2,m3,E,B1,B2,B3".
std::string cell_average_header(int n);

/// Cell averages, one row per cell. n is taken from the header.
CellAverageMatrix<double> read_cell_averages(std::istream& in);
CellAverageMatrix<double> read_cell_averages(const std::string& path);
void write_cell_averages(std::ostream& out, const CellAverageMatrix<double>& X);
void write_cell_averages(const std::string& path, const CellAverageMatrix<double>& X);

/// Flat "key = value" file, '#' starts a comment. `case` selects the defaults the other
/// keys override.
dg::RunConfig parse_config(std::istream& in);
dg::RunConfig read_config(const std::string& path);

/// Legacy ASCII structured grid with cell data rho, m, E, B, pressure, mach.
void write_vtk(const std::string& path, const dg::DGField& f, double gamma, double time);

void write_diagnostics_header(std::ostream& out);
void write_diagnostics_row(std::ostream& out, const dg::StepDiagnostics& d);

}  // namespace mhdidp::io
