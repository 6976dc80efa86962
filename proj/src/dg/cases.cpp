#include "mhdidp/dg/cases.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace mhdidp::dg {

namespace {

constexpr double kPi = std::numbers::pi;

State8 from_primitive(double rho, double ux, double uy, double uz, double p, double Bx,
                      double By, double Bz, double gamma) {
  State8 U;
  U << rho, rho * ux, rho * uy, rho * uz,
      p / (gamma - 1.0) + 0.5 * rho * (ux * ux + uy * uy + uz * uz) +
          0.5 * (Bx * Bx + By * By + Bz * Bz),
      Bx, By, Bz;
  return U;
}

// Propagation along (cos, sin) with tan = 1/2.
const double kCos = 2.0 / std::sqrt(5.0);
const double kSin = 1.0 / std::sqrt(5.0);

State8 rotor_state(double x, double y, double gamma) {
  const double r0 = 0.1, r1 = 0.115;
  const double dx = x - 0.5, dy = y - 0.5;
  const double r = std::hypot(dx, dy);
  double rho = 1.0, ux = 0.0, uy = 0.0;
  if (r <= r0) {
    rho = 10.0;
    ux = -dy / r0;
    uy = dx / r0;
  } else if (r <= r1) {
    const double lam = (r1 - r) / (r1 - r0);
    rho = 1.0 + 9.0 * lam;
    ux = -lam * dy / r;
    uy = lam * dx / r;
  }
  return from_primitive(rho, ux, uy, 0.0, 0.5, 2.5 / std::sqrt(4.0 * kPi), 0.0, 0.0, gamma);
}

State8 orszag_tang_state(double x, double y, double gamma) {
  return from_primitive(gamma * gamma, -std::sin(y), std::sin(x), 0.0, gamma, -std::sin(y),
                        std::sin(2.0 * x), 0.0, gamma);
}

State8 jet_ambient(double b0, double gamma) {
  return from_primitive(0.14, 0.0, 0.0, 0.0, 1.0, b0, 0.0, 0.0, gamma);
}

State8 jet_inflow(double b0, double gamma) {
  return from_primitive(1.4, 800.0, 0.0, 0.0, 1.0, b0, 0.0, 0.0, gamma);
}

}  // namespace

CaseId parse_case(const std::string& s) {
  if (s == "alfven") return CaseId::alfven;
  if (s == "rotor") return CaseId::rotor;
  if (s == "orszag-tang" || s == "ot" || s == "orszag_tang") return CaseId::orszag_tang;
  if (s == "jet") return CaseId::jet;
  throw std::invalid_argument("unknown case '" + s + "'");
}

std::string to_string(CaseId c) {
  switch (c) {
    case CaseId::alfven: return "alfven";
    case CaseId::rotor: return "rotor";
    case CaseId::orszag_tang: return "orszag-tang";
    case CaseId::jet: return "jet";
  }
  return "?";
}

Mesh RunConfig::mesh() const {
  Mesh m;
  m.nx = nx;
  m.ny = ny;
  m.x0 = x0;
  m.y0 = y0;
  m.dx = (x1 - x0) / nx;
  return m;
}

void RunConfig::validate() const {
  if (nx < 4 || ny < 4) throw std::invalid_argument("config: nx and ny must be >= 4");
  if (!(x1 > x0) || !(y1 > y0)) throw std::invalid_argument("config: empty domain");
  const double hx = (x1 - x0) / nx, hy = (y1 - y0) / ny;
  if (std::abs(hx - hy) > 1e-12 * hx)
    throw std::invalid_argument("config: cells must be square (domain aspect != nx/ny)");
  if (!(gamma > 1.0)) throw std::invalid_argument("config: gamma must be > 1");
  if (!(eps > 0.0)) throw std::invalid_argument("config: eps must be > 0");
  if (!(cfl > 0.0)) throw std::invalid_argument("config: cfl must be > 0");
  if (!(tvb_m >= 0.0)) throw std::invalid_argument("config: tvb_m must be >= 0");
  if (!(t_final > 0.0)) throw std::invalid_argument("config: t_final must be > 0");
  if (fixed_dt && !(*fixed_dt > 0.0)) throw std::invalid_argument("config: fixed_dt must be > 0");
  if (!(dy_tol > 0.0) || dy_max_iters < 1) throw std::invalid_argument("config: bad DY settings");
  if (bc.periodic_x() != (bc.side[kRight] == BoundaryKind::periodic) ||
      bc.periodic_y() != (bc.side[kTop] == BoundaryKind::periodic))
    throw std::invalid_argument("config: periodic sides must come in pairs");
  for (auto k : bc.side)
    if (k == BoundaryKind::jet_inflow && !bc.nozzle)
      throw std::invalid_argument("config: jet-inflow side needs the jet case");
}

void refresh_derived(RunConfig& cfg) {
  if (cfg.case_id == CaseId::alfven) cfg.fixed_dt = 0.08 / std::sqrt(5.0) * (cfg.x1 - cfg.x0) / cfg.nx;
  if (cfg.case_id == CaseId::jet) {
    JetNozzle nz;
    nz.jet = jet_inflow(cfg.b0, cfg.gamma);
    nz.ambient = jet_ambient(cfg.b0, cfg.gamma);
    cfg.bc.nozzle = nz;
  }
}

RunConfig default_config(CaseId c) {
  RunConfig cfg;
  cfg.case_id = c;
  using K = BoundaryKind;
  switch (c) {
    case CaseId::alfven:
      cfg.x1 = std::sqrt(5.0) / 2.0;
      cfg.y1 = std::sqrt(5.0);
      cfg.nx = 16;
      cfg.ny = 32;
      cfg.gamma = 5.0 / 3.0;
      cfg.eps = 1e-13;
      cfg.t_final = 2.0;
      cfg.bc.side = {K::periodic, K::periodic, K::periodic, K::periodic};
      break;
    case CaseId::rotor:
      cfg.nx = cfg.ny = 150;
      cfg.gamma = 5.0 / 3.0;
      cfg.eps = 1e-9;
      cfg.t_final = 0.295;
      cfg.bc.side = {K::outflow, K::outflow, K::outflow, K::outflow};
      break;
    case CaseId::orszag_tang:
      cfg.x1 = cfg.y1 = 2.0 * kPi;
      cfg.nx = cfg.ny = 100;
      cfg.gamma = 5.0 / 3.0;
      cfg.eps = 1e-9;
      cfg.cfl = 0.7;
      cfg.t_final = 0.5;
      cfg.bc.side = {K::periodic, K::periodic, K::periodic, K::periodic};
      break;
    case CaseId::jet:
      cfg.x1 = 1.5;
      cfg.y1 = 0.75;
      cfg.nx = 150;
      cfg.ny = 75;
      cfg.gamma = 1.4;
      cfg.eps = 1e-6;
      cfg.tvb_m = 110.0;
      cfg.t_final = 5e-4;
      cfg.b0 = std::sqrt(200.0);
      cfg.bc.side = {K::jet_inflow, K::outflow, K::reflective, K::outflow};
      break;
  }
  cfg.out_dir = "out_" + to_string(c);
  refresh_derived(cfg);
  return cfg;
}

State8 alfven_exact(double x, double y, double t, double gamma) {
  const double zeta = x * kCos + y * kSin;
  const double ph = 2.0 * kPi * (zeta - t);
  const double vperp = 0.1 * std::sin(ph), vz = 0.1 * std::cos(ph);
  const double bperp = vperp, bz = vz;
  // parallel = (cos, sin), perp = (-sin, cos)
  const double ux = -vperp * kSin, uy = vperp * kCos;
  const double Bx = kCos - bperp * kSin, By = kSin + bperp * kCos;
  return from_primitive(1.0, ux, uy, vz, 0.1, Bx, By, bz, gamma);
}

DGField init_case(const RunConfig& cfg) {
  cfg.validate();
  DGField f(cfg.mesh());
  const auto& T = tables();
  std::function<State8(double, double)> ic;
  switch (cfg.case_id) {
    case CaseId::alfven: ic = [&](double x, double y) { return alfven_exact(x, y, 0.0, cfg.gamma); }; break;
    case CaseId::rotor: ic = [&](double x, double y) { return rotor_state(x, y, cfg.gamma); }; break;
    case CaseId::orszag_tang: ic = [&](double x, double y) { return orszag_tang_state(x, y, cfg.gamma); }; break;
    case CaseId::jet: {
      const State8 amb = jet_ambient(cfg.b0, cfg.gamma);
      ic = [amb](double, double) { return amb; };
      break;
    }
  }
  const Mesh& m = f.mesh;
  for (int j = 0; j < m.ny; ++j)
    for (int i = 0; i < m.nx; ++i) {
      Eigen::Matrix<double, kVolumePoints, kVars> vals;
      for (int q = 0; q < kVolumePoints; ++q) {
        const double x = m.xc(i) + 0.5 * m.dx * T.vol_points(q, 0);
        const double y = m.yc(j) + 0.5 * m.dx * T.vol_points(q, 1);
        vals.row(q) = ic(x, y).transpose();
      }
      f.cell(m.index(i, j)) = (T.vol_project * vals).transpose();
    }
  return f;
}

ErrorReport compute_errors(const DGField& f, const RunConfig& cfg, double t) {
  if (cfg.case_id != CaseId::alfven)
    throw std::invalid_argument("compute_errors: no exact solution for case " + to_string(cfg.case_id));
  const Mesh& m = f.mesh;
  const double area = m.dx * m.dx;
  auto wave = [](const State8& U) {
    const double ux = U(1) / U(0), uy = U(2) / U(0), uz = U(3) / U(0);
    return Eigen::Vector4d(-ux * kSin + uy * kCos, uz, -U(5) * kSin + U(6) * kCos, U(7));
  };
  // Nodal discrete norms on the 3x3 Gauss-Lobatto nodes: L1_h(K) = |K| * mean |e|.
  const std::array<double, 3> nodes = {-1.0, 0.0, 1.0};
  ErrorReport rep;
  for (int c = 0; c < m.cells(); ++c) {
    const int i = c % m.nx, j = c / m.nx;
    Eigen::Vector4d l1 = Eigen::Vector4d::Zero(), linf = Eigen::Vector4d::Zero();
    for (double xi : nodes)
      for (double eta : nodes) {
        const double x = m.xc(i) + 0.5 * m.dx * xi;
        const double y = m.yc(j) + 0.5 * m.dx * eta;
        const Eigen::Vector4d e =
            (wave(f.value(c, xi, eta)) - wave(alfven_exact(x, y, t, cfg.gamma))).cwiseAbs();
        l1 += area / 9.0 * e;
        linf = linf.cwiseMax(e);
      }
    rep.err1 += 0.25 * l1.sum();
    rep.errinf = std::max(rep.errinf, 0.25 * linf.sum());
  }
  return rep;
}

void fill_rates(const ErrorReport& coarse, ErrorReport& fine) {
  fine.rate1 = std::log(coarse.err1 / fine.err1) / std::log(2.0);
  fine.rateinf = std::log(coarse.errinf / fine.errinf) / std::log(2.0);
}

}  // namespace mhdidp::dg
