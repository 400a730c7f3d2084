// SPDX-License-Identifier: Apache-2.0

#include "debye/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <set>

#include <json.hpp>

#include "debye/errors.hpp"

namespace debye
{

namespace
{

constexpr double pi = std::numbers::pi;
using json = nlohmann::json;

cplx parse_complex(const json &v, const std::string &key)
{
  if (v.is_number())
  {
    return v.get<double>();
  }
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
  {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw ConfigError("config key '" + key + "' must be a number or [re, im]");
}

json complex_json(cplx v) { return json::array({v.real(), v.imag()}); }

double tube_diameter(const FourierCurve &c)
{
  double rmin = 1e300, rmax = -1e300, zmin = 1e300, zmax = -1e300;
  for (int i = 0; i < 1024; i++)
  {
    const double t = 2.0 * pi * i / 1024;
    rmin = std::min(rmin, c.rho(t));
    rmax = std::max(rmax, c.rho(t));
    zmin = std::min(zmin, c.z(t));
    zmax = std::max(zmax, c.z(t));
  }
  return std::max(rmax - rmin, zmax - zmin);
}

ModalSources random_sources(const SurfaceGrid &grid, int mode, cplx k, std::uint64_t seed,
                            double amplitude)
{
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  const int n = grid.n_nodes;
  const SurfaceCalculus calc(grid, mode);
  DebyeSourceSet s;
  s.mode = mode;
  s.r = CVector::Zero(n);
  s.q = CVector::Zero(n);
  for (int m = -4; m <= 4; m++)
  {
    const cplx a(nd(rng), nd(rng)), b(nd(rng), nd(rng));
    for (int i = 0; i < n; i++)
    {
      const cplx e = std::exp(cplx(0.0, m * grid.t(i))) / (1.0 + m * m);
      s.r[i] += a * e;
      s.q[i] += b * e;
    }
  }
  if (mode == 0)
  {
    const Eigen::RowVectorXcd mean = calc.mean_row().cast<cplx>();
    s.r.array() -= (mean * s.r)(0);
    s.q.array() -= (mean * s.q)(0);
    s.a << cplx(nd(rng), nd(rng)), cplx(nd(rng), nd(rng));
  }
  s.r *= amplitude;
  s.q *= amplitude;
  s.a *= amplitude;
  return pec_sources(s, calc, k);
}

double relative_l2(double num, double den) { return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num); }

struct FieldErrors
{
  double exterior, interior;
};

FieldErrors probe_errors(const ManufacturedProblem &mp, const SurfaceGrid &grid,
                         const ProbeSet &probes, const ModalSources *ext,
                         const ModalSources *in, const MaterialParams &p)
{
  const FieldEvaluator fe(grid);
  FieldErrors out{0.0, 0.0};
  if (ext)
  {
    double num = 0.0, den = 0.0;
    for (const Vec3 &x : probes.exterior)
    {
      const EMFieldSample a = fe.evaluate(x, {*ext}, p.k1, {p.sqrt_eps1, p.sqrt_mu1});
      const FieldPair b = mp.exterior_field(x);
      num += (a.xi - b.e).squaredNorm() + (a.eta_star - b.h).squaredNorm();
      den += b.e.squaredNorm() + b.h.squaredNorm();
    }
    out.exterior = relative_l2(num, den);
  }
  if (in)
  {
    double num = 0.0, den = 0.0;
    for (const Vec3 &x : probes.interior)
    {
      const EMFieldSample a = fe.evaluate(x, {*in}, p.k0, {p.sqrt_eps0, p.sqrt_mu0});
      const FieldPair b = mp.interior_field(x);
      num += (a.xi - b.e).squaredNorm() + (a.eta_star - b.h).squaredNorm();
      den += b.e.squaredNorm() + b.h.squaredNorm();
    }
    out.interior = relative_l2(num, den);
  }
  return out;
}

double residual_of(const ModalSystem &sys)
{
  const double b = sys.rhs.norm();
  const double r = (sys.matrix * sys.solution - sys.rhs).norm();
  return b > 0.0 ? r / b : r;
}

MaterialParams params_at(const ExperimentConfig &cfg, double omega)
{
  return material_params(cfg.eps0, cfg.mu0, cfg.eps1, cfg.mu1, omega);
}

std::vector<ConditionCell> condition_grid(const ExperimentConfig &cfg,
                                          const std::vector<double> &tcs)
{
  const SurfaceGrid grid = experiment_grid(cfg);
  const SolverConfig scfg = solver_config(cfg);
  const int mode = cfg.modes.empty() ? 0 : cfg.modes.front();
  const CMatrix g0 = static_single_layer(grid, mode, scfg.tables);
  const BoundaryData zero = BoundaryData::zero(mode, grid.n_nodes);
  std::vector<ConditionCell> cells;
  for (double omega : cfg.omegas)
  {
    const MaterialParams p = params_at(cfg, omega);
    const DielectricOperators dops = prepare_dielectric(grid, mode, p, scfg, &g0);
    for (double tc : tcs)
    {
      ModalSystem sys = assemble_dielectric(dops, p, ClutchingMap{tc}, zero, scfg);
      const double c = condition_number(sys);
      cells.push_back({tc, omega, mode, c, !std::isfinite(c) || c > 1e14});
    }
  }
  std::stable_sort(cells.begin(), cells.end(), [](const ConditionCell &a, const ConditionCell &b)
                   { return a.tc < b.tc; });
  return cells;
}

}  // namespace

ExperimentConfig load_config(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ConfigError("cannot open config file " + path);
  }
  json j;
  try
  {
    in >> j;
  }
  catch (const json::exception &e)
  {
    throw ConfigError("config " + path + ": " + e.what());
  }
  if (!j.is_object())
  {
    throw ConfigError("config must be a JSON object");
  }
  static const std::set<std::string> known = {
    "experiment", "geometry", "nodes", "modes", "omegas", "tc", "tc_list", "eps0", "mu0",
    "eps1", "mu1", "order", "aux_nodes", "probes", "seed", "amplitude", "out"};
  ExperimentConfig c;
  try
  {
    for (const auto &[key, v] : j.items())
    {
      if (!known.count(key))
      {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
    c.experiment = j.value("experiment", c.experiment);
    c.geometry = j.value("geometry", c.geometry);
    c.nodes = j.value("nodes", c.nodes);
    c.modes = j.value("modes", c.modes);
    c.omegas = j.value("omegas", c.omegas);
    c.tc = j.value("tc", c.tc);
    c.tc_list = j.value("tc_list", c.tc_list);
    for (const char *k : {"eps0", "mu0", "eps1", "mu1"})
    {
      if (j.contains(k))
      {
        const cplx v = parse_complex(j[k], k);
        const std::string s(k);
        (s == "eps0" ? c.eps0 : s == "mu0" ? c.mu0 : s == "eps1" ? c.eps1 : c.mu1) = v;
      }
    }
    c.order = j.value("order", c.order);
    c.aux_nodes = j.value("aux_nodes", c.aux_nodes);
    c.probes = j.value("probes", c.probes);
    c.seed = j.value("seed", c.seed);
    c.amplitude = j.value("amplitude", c.amplitude);
    c.out = j.value("out", c.out);
  }
  catch (const json::exception &e)
  {
    throw ConfigError("config " + path + ": " + e.what());
  }
  // Relative geometry paths are taken relative to the config file.
  if (!c.geometry.empty() && c.geometry.front() != '/')
  {
    const auto slash = path.find_last_of('/');
    if (slash != std::string::npos)
    {
      c.geometry = path.substr(0, slash + 1) + c.geometry;
    }
  }
  return c;
}

std::string config_json(const ExperimentConfig &c)
{
  json j;
  j["experiment"] = c.experiment;
  j["geometry"] = c.geometry;
  j["nodes"] = c.nodes;
  j["modes"] = c.modes;
  j["omegas"] = c.omegas;
  j["tc"] = c.tc;
  j["tc_list"] = c.tc_list;
  j["eps0"] = complex_json(c.eps0);
  j["mu0"] = complex_json(c.mu0);
  j["eps1"] = complex_json(c.eps1);
  j["mu1"] = complex_json(c.mu1);
  j["order"] = c.order;
  j["aux_nodes"] = c.aux_nodes;
  j["probes"] = c.probes;
  j["seed"] = c.seed;
  j["amplitude"] = c.amplitude;
  return j.dump();
}

std::string config_hash(const ExperimentConfig &cfg)
{
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : config_json(cfg))
  {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

SurfaceGrid experiment_grid(const ExperimentConfig &cfg)
{
  if (cfg.geometry.empty())
  {
    return build_surface_grid(FourierCurve::reference_torus(), cfg.nodes > 0 ? cfg.nodes : 200);
  }
  const GeometryFile g = read_geometry(cfg.geometry);
  const int n = cfg.nodes > 0 ? cfg.nodes : (g.nodes > 0 ? g.nodes : 200);
  return build_surface_grid(g.curve, n);
}

SolverConfig solver_config(const ExperimentConfig &cfg)
{
  SolverConfig s;
  s.tables.order = cfg.order;
  alpert_rule(cfg.order);  // validates
  return s;
}

bool inside_torus(const FourierCurve &curve, const Vec3 &x)
{
  const double rho = std::hypot(x.x(), x.y()), z = x.z();
  const int m = 2048;
  double winding = 0.0;
  double a0 = std::atan2(curve.z(0.0) - z, curve.rho(0.0) - rho);
  for (int i = 1; i <= m; i++)
  {
    const double t = 2.0 * pi * i / m;
    const double a1 = std::atan2(curve.z(t) - z, curve.rho(t) - rho);
    double d = a1 - a0;
    d -= 2.0 * pi * std::round(d / (2.0 * pi));
    winding += d;
    a0 = a1;
  }
  return std::abs(winding) > pi;
}

ManufacturedProblem::ManufacturedProblem(const FourierCurve &curve, int mode,
                                         const MaterialParams &params, std::uint64_t seed,
                                         int aux_nodes, double amplitude)
  : mode_(mode),
    params_(params),
    inner_(build_surface_grid(curve.scaled_about_center(0.5), aux_nodes)),
    outer_(build_surface_grid(curve.scaled_about_center(1.5), aux_nodes)),
    src_inner_(random_sources(inner_, mode, params.k1, seed + 1, amplitude)),
    src_outer_(random_sources(outer_, mode, params.k0, seed + 2, amplitude)),
    eval_inner_(inner_),
    eval_outer_(outer_)
{
  // Separation from Gamma: at least 0.1 tube diameters, inner copy inside, outer outside.
  const SurfaceGrid gamma = build_surface_grid(curve, 64);
  const FieldEvaluator fg(gamma);
  const double gap = 0.1 * tube_diameter(curve);
  for (int i = 0; i < aux_nodes; i += 4)
  {
    const Vec3 xi = inner_.nodes[i].position(0.0), xo = outer_.nodes[i].position(0.0);
    if (!inside_torus(curve, xi) || fg.distance_to_surface(xi) < gap ||
        inside_torus(curve, xo) || fg.distance_to_surface(xo) < gap)
    {
      throw GeometryError("auxiliary surfaces are not separated from the boundary");
    }
  }
}

FieldPair ManufacturedProblem::exterior_field(const Vec3 &x) const
{
  const EMFieldSample s =
    eval_inner_.evaluate(x, {src_inner_}, params_.k1, {params_.sqrt_eps1, params_.sqrt_mu1});
  return {s.xi, s.eta_star};
}

FieldPair ManufacturedProblem::interior_field(const Vec3 &x) const
{
  const EMFieldSample s =
    eval_outer_.evaluate(x, {src_outer_}, params_.k0, {params_.sqrt_eps0, params_.sqrt_mu0});
  return {s.xi, s.eta_star};
}

BoundaryData ManufacturedProblem::dielectric_data(const SurfaceGrid &grid) const
{
  const int n = grid.n_nodes;
  const MaterialParams &p = params_;
  BoundaryData d = BoundaryData::zero(mode_, n);
  for (int i = 0; i < n; i++)
  {
    const CurvePoint &c = grid.nodes[i];
    const Vec3 x = c.position(0.0);
    const FieldPair fe = exterior_field(x), fi = interior_field(x);
    const CVec3 de = fe.e - fi.e, dh = fe.h - fi.h;
    const CVec3 t = c.tau(0.0).cast<cplx>(), th = c.theta(0.0).cast<cplx>(),
                nv = c.normal(0.0).cast<cplx>();
    d.j_in.tau[i] = t.dot(de);
    d.j_in.theta[i] = th.dot(de);
    d.m_in.tau[i] = t.dot(dh);
    d.m_in.theta[i] = th.dot(dh);
    d.f[i] = p.mu1 * nv.dot(fe.h) - p.mu0 * nv.dot(fi.h);
    d.h[i] = -p.eps1 * nv.dot(fe.e) + p.eps0 * nv.dot(fi.e);
  }
  return d;
}

BoundaryData ManufacturedProblem::pec_data(const SurfaceGrid &grid) const
{
  const int n = grid.n_nodes;
  BoundaryData d = BoundaryData::zero(mode_, n);
  for (int i = 0; i < n; i++)
  {
    const CurvePoint &c = grid.nodes[i];
    const FieldPair fe = exterior_field(c.position(0.0));
    d.j_in.tau[i] = c.tau(0.0).cast<cplx>().dot(fe.e);
    d.j_in.theta[i] = c.theta(0.0).cast<cplx>().dot(fe.e);
    d.f[i] = c.normal(0.0).cast<cplx>().dot(fe.h);
  }
  if (mode_ == 0)
  {
    const HomologyCycles cyc = build_cycles(grid, 24, 64);
    d.disk_flux = cyc.disk.integrate([&](const Vec3 &x) { return exterior_field(x).h.z(); });
  }
  return d;
}

ProbeSet make_probes(const FourierCurve &curve, int count, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double diam = tube_diameter(curve);
  const SurfaceGrid gamma = build_surface_grid(curve, 64);
  const FieldEvaluator fg(gamma);
  ProbeSet p;
  while (static_cast<int>(p.exterior.size()) < count)
  {
    const double t = 2.0 * pi * u(rng), th = 2.0 * pi * u(rng);
    const double d = (0.25 + 0.5 * u(rng)) * diam;
    const CurvePoint c = evaluate_curve(curve, t);
    const Vec3 x = c.position(th) + d * c.normal(th);
    if (!inside_torus(curve, x) && fg.distance_to_surface(x) >= 0.2 * diam)
    {
      p.exterior.push_back(x);
    }
  }
  while (static_cast<int>(p.interior.size()) < count)
  {
    const double t = 2.0 * pi * u(rng), th = 2.0 * pi * u(rng);
    const double s = 0.2 + 0.5 * u(rng);
    const double rho = curve.rho_mean() + s * (curve.rho(t) - curve.rho_mean());
    const double z = curve.z_mean() + s * (curve.z(t) - curve.z_mean());
    const Vec3 x(rho * std::cos(th), rho * std::sin(th), z);
    if (inside_torus(curve, x) && fg.distance_to_surface(x) >= 0.05 * diam)
    {
      p.interior.push_back(x);
    }
  }
  return p;
}

namespace
{

struct DielectricRun
{
  DebyeSourceSet solution;
  AccuracyRow row;
};

DielectricRun dielectric_run(const ExperimentConfig &cfg, const SurfaceGrid &grid,
                             const ProbeSet &probes, int mode, double omega)
{
  const MaterialParams p = params_at(cfg, omega);
  const SolverConfig scfg = solver_config(cfg);
  const ManufacturedProblem mp(grid.curve, mode, p, cfg.seed, cfg.aux_nodes, cfg.amplitude);
  const ClutchingMap clutch{cfg.tc};
  ModalSystem sys = assemble_dielectric(grid, mode, p, clutch, mp.dielectric_data(grid), scfg);
  DebyeSourceSet sol = solve(sys);
  const SurfaceCalculus calc(grid, mode);
  const auto [ext, in] = dielectric_sources(sol, calc, p, clutch);
  const FieldErrors e = probe_errors(mp, grid, probes, &ext, &in, p);
  return {sol, {omega, mode, e.exterior, e.interior, condition_number(sys), residual_of(sys)}};
}

struct PecRun
{
  DebyeSourceSet solution;
  PecRow row;
};

PecRun pec_run(const ExperimentConfig &cfg, const SurfaceGrid &grid, const ProbeSet &probes,
               int mode, double omega)
{
  const MaterialParams p = params_at(cfg, omega);
  const SolverConfig scfg = solver_config(cfg);
  const ManufacturedProblem mp(grid.curve, mode, p, cfg.seed, cfg.aux_nodes, cfg.amplitude);
  ModalSystem sys = assemble_pec(grid, mode, p, mp.pec_data(grid), scfg);
  DebyeSourceSet sol = solve(sys);
  const SurfaceCalculus calc(grid, mode);
  const ModalSources ext = pec_sources(sol, calc, p.k1);
  const FieldErrors e = probe_errors(mp, grid, probes, &ext, nullptr, p);
  return {sol, {omega, mode, condition_number(sys), residual_of(sys), e.exterior}};
}

}  // namespace

std::vector<AccuracyRow> run_manufactured(const ExperimentConfig &cfg)
{
  const SurfaceGrid grid = experiment_grid(cfg);
  const ProbeSet probes = make_probes(grid.curve, cfg.probes, cfg.seed);
  std::vector<AccuracyRow> rows;
  for (int mode : cfg.modes)
  {
    for (double omega : cfg.omegas)
    {
      rows.push_back(dielectric_run(cfg, grid, probes, mode, omega).row);
    }
  }
  return rows;
}

std::pair<DebyeSourceSet, AccuracyRow> solve_manufactured_dielectric(const ExperimentConfig &cfg)
{
  const SurfaceGrid grid = experiment_grid(cfg);
  const ProbeSet probes = make_probes(grid.curve, cfg.probes, cfg.seed);
  const int mode = cfg.modes.empty() ? 0 : cfg.modes.front();
  const double omega = cfg.omegas.empty() ? 1.0 : cfg.omegas.front();
  DielectricRun r = dielectric_run(cfg, grid, probes, mode, omega);
  return {r.solution, r.row};
}

std::pair<DebyeSourceSet, AccuracyRow> solve_manufactured_pec(const ExperimentConfig &cfg)
{
  const SurfaceGrid grid = experiment_grid(cfg);
  const ProbeSet probes = make_probes(grid.curve, cfg.probes, cfg.seed);
  const int mode = cfg.modes.empty() ? 0 : cfg.modes.front();
  const double omega = cfg.omegas.empty() ? 1.0 : cfg.omegas.front();
  PecRun r = pec_run(cfg, grid, probes, mode, omega);
  return {r.solution,
          {omega, mode, r.row.err_exterior, 0.0, r.row.condition, r.row.residual}};
}

std::vector<ConditionCell> run_clutch_sweep(const ExperimentConfig &cfg)
{
  return condition_grid(cfg, cfg.tc_list);
}

std::vector<ConditionCell> run_resonance_scan(const ExperimentConfig &cfg)
{
  return condition_grid(cfg, {cfg.tc});
}

std::vector<PecRow> run_pec(const ExperimentConfig &cfg)
{
  const SurfaceGrid grid = experiment_grid(cfg);
  const ProbeSet probes = make_probes(grid.curve, cfg.probes, cfg.seed);
  std::vector<PecRow> rows;
  for (int mode : cfg.modes)
  {
    for (double omega : cfg.omegas)
    {
      rows.push_back(pec_run(cfg, grid, probes, mode, omega).row);
    }
  }
  return rows;
}

CsvWriter::CsvWriter(const std::string &path, const std::vector<std::string> &header,
                     const ExperimentConfig &cfg)
  : out_(path), columns_(header.size())
{
  if (!out_)
  {
    throw ConfigError("cannot write " + path);
  }
  for (std::size_t i = 0; i < header.size(); i++)
  {
    out_ << (i ? "," : "") << header[i];
  }
  out_ << "\n# experiment=" << cfg.experiment << " config_hash=" << config_hash(cfg)
       << " seed=" << cfg.seed << "\n";
}

void CsvWriter::row(const std::vector<std::string> &cells)
{
  if (cells.size() != columns_)
  {
    throw ConfigError("CSV row has " + std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(columns_));
  }
  for (std::size_t i = 0; i < cells.size(); i++)
  {
    out_ << (i ? "," : "") << cells[i];
  }
  out_ << "\n";
  out_.flush();
}

std::string CsvWriter::num(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string CsvWriter::num(int v) { return std::to_string(v); }

std::vector<std::string> CsvWriter::complex(cplx v) { return {num(v.real()), num(v.imag())}; }

}  // namespace debye
