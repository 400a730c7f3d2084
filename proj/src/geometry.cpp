// SPDX-License-Identifier: Apache-2.0

#include "debye/geometry.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include <json.hpp>

#include "debye/quadrature.hpp"

namespace debye
{

namespace
{

constexpr double two_pi = 2.0 * std::numbers::pi;

// d-th derivative of sum_k c_k cos(kt) + s_k sin(kt).
double fourier_eval(const std::vector<double> &c, const std::vector<double> &s, double t,
                    int d)
{
  double v = 0.0;
  for (std::size_t k = 0; k < c.size(); k++)
  {
    const double kk = static_cast<double>(k);
    const double a = k * t;
    switch (d)
    {
      case 0: v += c[k] * std::cos(a); break;
      case 1: v -= c[k] * kk * std::sin(a); break;
      default: v -= c[k] * kk * kk * std::cos(a); break;
    }
  }
  for (std::size_t k = 1; k < s.size(); k++)
  {
    const double kk = static_cast<double>(k);
    const double a = k * t;
    switch (d)
    {
      case 0: v += s[k] * std::sin(a); break;
      case 1: v += s[k] * kk * std::cos(a); break;
      default: v -= s[k] * kk * kk * std::sin(a); break;
    }
  }
  return v;
}

}  // namespace

double FourierCurve::rho(double t) const { return fourier_eval(rho_cos, rho_sin, t, 0); }
double FourierCurve::z(double t) const { return fourier_eval(z_cos, z_sin, t, 0); }
double FourierCurve::drho(double t) const { return fourier_eval(rho_cos, rho_sin, t, 1); }
double FourierCurve::dz(double t) const { return fourier_eval(z_cos, z_sin, t, 1); }
double FourierCurve::d2rho(double t) const { return fourier_eval(rho_cos, rho_sin, t, 2); }
double FourierCurve::d2z(double t) const { return fourier_eval(z_cos, z_sin, t, 2); }

FourierCurve FourierCurve::reversed() const
{
  FourierCurve c = *this;
  for (auto &s : c.rho_sin)
  {
    s = -s;
  }
  for (auto &s : c.z_sin)
  {
    s = -s;
  }
  return c;
}

FourierCurve FourierCurve::scaled_about_center(double factor) const
{
  FourierCurve c = *this;
  for (std::size_t k = 1; k < c.rho_cos.size(); k++)
  {
    c.rho_cos[k] *= factor;
  }
  for (std::size_t k = 1; k < c.z_cos.size(); k++)
  {
    c.z_cos[k] *= factor;
  }
  for (auto &s : c.rho_sin)
  {
    s *= factor;
  }
  for (auto &s : c.z_sin)
  {
    s *= factor;
  }
  return c;
}

double FourierCurve::signed_area() const
{
  // 1/2 \oint (rho dz - z drho), integrated exactly enough by a dense trapezoid rule.
  const int m = 4096;
  double acc = 0.0;
  for (int i = 0; i < m; i++)
  {
    const double t = two_pi * i / m;
    acc += rho(t) * dz(t) - z(t) * drho(t);
  }
  return 0.5 * acc * two_pi / m;
}

FourierCurve FourierCurve::reference_torus()
{
  // rho = 2 + (1 + 0.2 cos 4t) cos t, z = 2 + (1 + 0.3 sin 4t) sin t, expanded.
  FourierCurve c;
  c.rho_cos = {2.0, 1.0, 0.0, 0.1, 0.0, 0.1};
  c.rho_sin = {0.0};
  c.z_cos = {2.0, 0.0, 0.0, 0.15, 0.0, -0.15};
  c.z_sin = {0.0, 1.0};
  return c;
}

Vec3 CurvePoint::position(double phi) const
{
  return {rho * std::cos(phi), rho * std::sin(phi), z};
}

Vec3 CurvePoint::tau(double phi) const
{
  return {tau_rho * std::cos(phi), tau_rho * std::sin(phi), tau_z};
}

Vec3 CurvePoint::theta(double phi) const { return {-std::sin(phi), std::cos(phi), 0.0}; }

Vec3 CurvePoint::normal(double phi) const
{
  return {nrm_rho * std::cos(phi), nrm_rho * std::sin(phi), nrm_z};
}

CurvePoint evaluate_curve(const FourierCurve &curve, double t)
{
  CurvePoint p;
  p.t = t;
  p.rho = curve.rho(t);
  p.z = curve.z(t);
  p.drho = curve.drho(t);
  p.dz = curve.dz(t);
  p.speed = std::hypot(p.drho, p.dz);
  if (p.speed > 0.0)
  {
    p.tau_rho = p.drho / p.speed;
    p.tau_z = p.dz / p.speed;
  }
  // n = tau x theta, with theta = y-hat at phi = 0.
  p.nrm_rho = -p.tau_z;
  p.nrm_z = p.tau_rho;
  return p;
}

double SurfaceGrid::h() const { return two_pi / n_nodes; }

Eigen::VectorXd SurfaceGrid::area_weights() const
{
  Eigen::VectorXd w(n_nodes);
  for (int i = 0; i < n_nodes; i++)
  {
    w[i] = nodes[i].jacobian() * h() * two_pi;
  }
  return w;
}

double SurfaceGrid::area() const { return area_weights().sum(); }

SurfaceGrid build_surface_grid(const FourierCurve &curve, int n_nodes)
{
  if (n_nodes < 16 || n_nodes % 2 != 0)
  {
    throw GeometryError("node count must be even and at least 16, got " +
                        std::to_string(n_nodes));
  }
  SurfaceGrid grid;
  // Outward normals need a clockwise curve in the (rho, z) plane.
  grid.curve = curve.signed_area() > 0.0 ? curve.reversed() : curve;
  grid.n_nodes = n_nodes;
  grid.nodes.reserve(n_nodes);
  for (int i = 0; i < n_nodes; i++)
  {
    const CurvePoint p = evaluate_curve(grid.curve, two_pi * i / n_nodes);
    if (!(p.rho > 0.0))
    {
      throw GeometryError("generating curve reaches the axis at node " +
                          std::to_string(i));
    }
    if (!(p.speed > 0.0))
    {
      throw GeometryError("generating curve has zero speed at node " + std::to_string(i));
    }
    grid.nodes.push_back(p);
  }
  return grid;
}

Vec3 SpanningDisk::boundary_point(double phi) const
{
  return {radius * std::cos(phi), radius * std::sin(phi), height};
}

HomologyCycles build_cycles(const SurfaceGrid &grid, int disk_radial, int disk_azimuthal)
{
  HomologyCycles cyc;
  int best = 0;
  for (int i = 1; i < grid.n_nodes; i++)
  {
    if (grid.nodes[i].rho < grid.nodes[best].rho)
    {
      best = i;
    }
  }
  cyc.b_index = best;
  const CurvePoint &p = grid.nodes[best];
  cyc.disk.height = p.z;
  cyc.disk.radius = p.rho;
  // Gauss-Legendre in r with the r dr factor applied at evaluation; exact for radial
  // polynomials up to degree 2*disk_radial - 2.
  const auto gl = gauss_legendre(disk_radial);
  for (int a = 0; a < disk_radial; a++)
  {
    cyc.disk.r_nodes.push_back(0.5 * p.rho * (gl.nodes[a] + 1.0));
    cyc.disk.r_weights.push_back(0.5 * p.rho * gl.weights[a]);
  }
  for (int b = 0; b < disk_azimuthal; b++)
  {
    cyc.disk.phi_nodes.push_back(two_pi * b / disk_azimuthal);
    cyc.disk.phi_weights.push_back(two_pi / disk_azimuthal);
  }
  return cyc;
}

GeometryFile read_geometry(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw GeometryError("cannot open geometry file " + path);
  }
  nlohmann::json j;
  try
  {
    in >> j;
  }
  catch (const nlohmann::json::exception &e)
  {
    throw GeometryError("malformed geometry file " + path + ": " + e.what());
  }
  GeometryFile g;
  auto read_series = [&](const char *key, std::vector<double> &c, std::vector<double> &s)
  {
    if (!j.contains(key))
    {
      throw GeometryError(std::string("geometry file is missing '") + key + "'");
    }
    c = j[key].value("cos", std::vector<double>{});
    s = j[key].value("sin", std::vector<double>{});
  };
  read_series("rho", g.curve.rho_cos, g.curve.rho_sin);
  read_series("z", g.curve.z_cos, g.curve.z_sin);
  g.nodes = j.value("nodes", 200);
  return g;
}

void write_geometry(const std::string &path, const GeometryFile &geom)
{
  nlohmann::json j;
  j["rho"]["cos"] = geom.curve.rho_cos;
  j["rho"]["sin"] = geom.curve.rho_sin;
  j["z"]["cos"] = geom.curve.z_cos;
  j["z"]["sin"] = geom.curve.z_sin;
  j["nodes"] = geom.nodes;
  std::ofstream out(path);
  out << j.dump(2) << "\n";
}

}  // namespace debye
