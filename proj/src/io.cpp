#include "mhdidp/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

namespace mhdidp::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& tok, int line) {
  const std::string t = trim(tok);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    throw ParseError("not a number: '" + t + "'", line);
  if (!std::isfinite(v)) throw ParseError("non-finite value: '" + t + "'", line);
  return v;
}

long parse_long(const std::string& tok, int line) {
  const std::string t = trim(tok);
  long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    throw ParseError("not an integer: '" + t + "'", line);
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(s);
  while (std::getline(ss, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

}  // namespace

std::string cell_average_header(int n) {
  std::string h = "rho";
  for (int k = 1; k <= n; ++k) h += ",m" + std::to_string(k);
  h += ",E";
  for (int k = 1; k <= n; ++k) h += ",B" + std::to_string(k);
  return h;
}

CellAverageMatrix<double> read_cell_averages(std::istream& in) {
  std::string line;
  int lineno = 0;
  int n = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string h = trim(line);
    if (h.empty()) continue;
    for (int k = 1; k <= 3 && n == 0; ++k)
      if (h == cell_average_header(k)) n = k;
    if (n == 0) throw ParseError("expected header like '" + cell_average_header(3) + "'", lineno);
    break;
  }
  if (n == 0) throw ParseError("empty file", 0);
  const int cols = 2 + 2 * n;
  std::vector<double> data;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto toks = split(line, ',');
    if (static_cast<int>(toks.size()) != cols)
      throw ParseError("expected " + std::to_string(cols) + " fields, got " +
                           std::to_string(toks.size()),
                       lineno);
    for (const auto& t : toks) data.push_back(parse_double(t, lineno));
  }
  const Eigen::Index rows = static_cast<Eigen::Index>(data.size()) / cols;
  if (rows == 0) throw ParseError("no data rows", lineno);
  CellAverageMatrix<double> X(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) X(r, c) = data[static_cast<size_t>(r * cols + c)];
  return X;
}

CellAverageMatrix<double> read_cell_averages(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_cell_averages(in);
}

void write_cell_averages(std::ostream& out, const CellAverageMatrix<double>& X) {
  const int n = vector_dim_of(X.cols());
  out << cell_average_header(n) << '\n' << std::setprecision(17);
  for (Eigen::Index r = 0; r < X.rows(); ++r) {
    for (Eigen::Index c = 0; c < X.cols(); ++c) out << (c ? "," : "") << X(r, c);
    out << '\n';
  }
}

void write_cell_averages(const std::string& path, const CellAverageMatrix<double>& X) {
  auto out = open_out(path);
  write_cell_averages(out, X);
}

dg::RunConfig parse_config(std::istream& in) {
  std::vector<std::pair<std::string, std::pair<std::string, int>>> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", lineno);
    kv.push_back({trim(line.substr(0, eq)), {trim(line.substr(eq + 1)), lineno}});
  }

  dg::RunConfig cfg;
  bool have_case = false;
  for (const auto& [k, v] : kv)
    if (k == "case") {
      try {
        cfg = dg::default_config(dg::parse_case(v.first));
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), v.second);
      }
      have_case = true;
    }
  if (!have_case) throw ParseError("missing required key 'case'", 0);

  bool explicit_dt = false;
  for (const auto& [k, vl] : kv) {
    const auto& [v, ln] = vl;
    if (k == "case") continue;
    else if (k == "nx") cfg.nx = static_cast<int>(parse_long(v, ln));
    else if (k == "ny") cfg.ny = static_cast<int>(parse_long(v, ln));
    else if (k == "gamma") cfg.gamma = parse_double(v, ln);
    else if (k == "eps") cfg.eps = parse_double(v, ln);
    else if (k == "cfl") cfg.cfl = parse_double(v, ln);
    else if (k == "tvb_m") cfg.tvb_m = parse_double(v, ln);
    else if (k == "t_final") cfg.t_final = parse_double(v, ln);
    else if (k == "fixed_dt") {
      if (v == "none") cfg.fixed_dt.reset();
      else cfg.fixed_dt = parse_double(v, ln);
      explicit_dt = true;
    }
    else if (k == "output_every") cfg.output_every = static_cast<int>(parse_long(v, ln));
    else if (k == "out_dir") cfg.out_dir = v;
    else if (k == "b0") cfg.b0 = parse_double(v, ln);
    else if (k == "dy_tol") cfg.dy_tol = parse_double(v, ln);
    else if (k == "dy_max_iters") cfg.dy_max_iters = static_cast<int>(parse_long(v, ln));
    else if (k == "max_steps") cfg.max_steps = parse_long(v, ln);
    else throw ParseError("unknown key '" + k + "'", ln);
  }
  const auto keep_dt = cfg.fixed_dt;
  dg::refresh_derived(cfg);
  if (explicit_dt) cfg.fixed_dt = keep_dt;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 0);
  }
  return cfg;
}

dg::RunConfig read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_config(in);
}

void write_vtk(const std::string& path, const dg::DGField& f, double gamma, double time) {
  const dg::Mesh& m = f.mesh;
  auto out = open_out(path);
  out << "# vtk DataFile Version 3.0\n"
      << "ideal MHD cell averages t=" << std::setprecision(17) << time << "\n"
      << "ASCII\nDATASET STRUCTURED_GRID\n"
      << "DIMENSIONS " << m.nx + 1 << ' ' << m.ny + 1 << " 1\n"
      << "POINTS " << (m.nx + 1) * (m.ny + 1) << " double\n";
  for (int j = 0; j <= m.ny; ++j)
    for (int i = 0; i <= m.nx; ++i) out << m.x0 + i * m.dx << ' ' << m.y0 + j * m.dx << " 0\n";

  const int N = m.cells();
  out << "CELL_DATA " << N << '\n';
  auto scalar = [&](const char* name, auto&& fn) {
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (int c = 0; c < N; ++c) out << fn(f.average(c)) << '\n';
  };
  auto vector = [&](const char* name, int first) {
    out << "VECTORS " << name << " double\n";
    for (int c = 0; c < N; ++c) {
      const dg::State8 U = f.average(c);
      out << U(first) << ' ' << U(first + 1) << ' ' << U(first + 2) << '\n';
    }
  };
  auto pressure = [gamma](const dg::State8& U) { return (gamma - 1.0) * dg::internal_energy8(U); };
  scalar("rho", [](const dg::State8& U) { return U(0); });
  vector("m", 1);
  scalar("E", [](const dg::State8& U) { return U(4); });
  vector("B", 5);
  scalar("pressure", pressure);
  scalar("mach", [&](const dg::State8& U) {
    const double p = pressure(U);
    const double speed = U.segment<3>(1).norm() / U(0);
    return p > 0 ? speed / std::sqrt(gamma * p / U(0)) : 0.0;
  });
}

void write_diagnostics_header(std::ostream& out) {
  out << "time,dt,dy_triggered,dy_iters,conservation_residual,min_rho,min_internal_energy\n";
}

void write_diagnostics_row(std::ostream& out, const dg::StepDiagnostics& d) {
  out << std::setprecision(17) << d.time << ',' << d.dt << ',' << (d.dy_triggered ? 1 : 0) << ','
      << d.dy_iters << ',' << d.conservation_residual << ',' << d.min_rho << ','
      << d.min_internal_energy << '\n';
}

}  // namespace mhdidp::io
