// SPDX-License-Identifier: Apache-2.0

#ifndef DEBYE_GEOMETRY_HPP
#define DEBYE_GEOMETRY_HPP

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace debye
{

using Vec3 = Eigen::Vector3d;

class GeometryError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Generating curve (rho(t), z(t)) of a surface of revolution, stored as truncated Fourier
// series in t on [0, 2pi). Index 0 of each sine array is ignored.
struct FourierCurve
{
  std::vector<double> rho_cos, rho_sin, z_cos, z_sin;

  double rho(double t) const;
  double z(double t) const;
  double drho(double t) const;
  double dz(double t) const;
  double d2rho(double t) const;
  double d2z(double t) const;

  // Mean of rho and z (the center of the tube cross-section).
  double rho_mean() const { return rho_cos.empty() ? 0.0 : rho_cos[0]; }
  double z_mean() const { return z_cos.empty() ? 0.0 : z_cos[0]; }

  // Curve reparameterized by t -> -t.
  FourierCurve reversed() const;

  // Copy with the non-constant Fourier content scaled by `factor` about the tube center.
  FourierCurve scaled_about_center(double factor) const;

  // Signed area enclosed in the (rho, z) half plane; positive for counter-clockwise.
  double signed_area() const;

  static FourierCurve reference_torus();
};

// Geometry and orthonormal frame at one parameter value, taken in the meridian plane
// theta = 0. Ambient components are (x, y, z) with x along rho.
struct CurvePoint
{
  double t = 0, rho = 0, z = 0, drho = 0, dz = 0, speed = 0;
  // Unit tangent and outward normal in (rho, z) components.
  double tau_rho = 0, tau_z = 0, nrm_rho = 0, nrm_z = 0;

  double jacobian() const { return speed * rho; }
  Vec3 position(double phi) const;
  Vec3 tau(double phi) const;
  Vec3 theta(double phi) const;
  Vec3 normal(double phi) const;
};

CurvePoint evaluate_curve(const FourierCurve &curve, double t);

struct SurfaceGrid
{
  FourierCurve curve;
  int n_nodes = 0;
  std::vector<CurvePoint> nodes;

  double h() const;
  double t(int i) const { return nodes[i].t; }
  // Surface area via the trapezoid rule in t and exact integration in theta.
  double area() const;
  // Area weights J_i * h * 2pi.
  Eigen::VectorXd area_weights() const;
};

// N >= 16 and even; throws GeometryError on an invalid curve. A clockwise curve in the
// (rho, z) plane is accepted as is; a counter-clockwise one is reversed so that
// n = tau x theta points out of the enclosed solid torus.
SurfaceGrid build_surface_grid(const FourierCurve &curve, int n_nodes);

struct SpanningDisk
{
  double height = 0, radius = 0;
  std::vector<double> r_nodes, r_weights;       // radial Gauss-Legendre on [0, radius]
  std::vector<double> phi_nodes, phi_weights;   // trapezoid in angle

  // Integral of a scalar function f(x) over the disk.
  template <typename F> auto integrate(F &&f) const
  {
    using R = decltype(f(Vec3{}));
    R acc{};
    for (std::size_t a = 0; a < r_nodes.size(); a++)
    {
      for (std::size_t b = 0; b < phi_nodes.size(); b++)
      {
        const Vec3 x(r_nodes[a] * std::cos(phi_nodes[b]),
                     r_nodes[a] * std::sin(phi_nodes[b]), height);
        acc += f(x) * (r_weights[a] * phi_weights[b] * r_nodes[a]);
      }
    }
    return acc;
  }
  Vec3 boundary_point(double phi) const;
};

struct HomologyCycles
{
  int b_index = 0;  // node index of the innermost toroidal circle
  SpanningDisk disk;
};

HomologyCycles build_cycles(const SurfaceGrid &grid, int disk_radial, int disk_azimuthal);

// JSON geometry file: {"rho": {"cos": [...], "sin": [...]}, "z": {...}, "nodes": N}.
struct GeometryFile
{
  FourierCurve curve;
  int nodes = 0;
};
GeometryFile read_geometry(const std::string &path);
void write_geometry(const std::string &path, const GeometryFile &geom);

}  // namespace debye

#endif  // DEBYE_GEOMETRY_HPP
