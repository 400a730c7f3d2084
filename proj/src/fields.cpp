// SPDX-License-Identifier: Apache-2.0

#include "debye/fields.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "debye/errors.hpp"
#include "debye/quadrature.hpp"

namespace debye
{

namespace
{

constexpr double pi = std::numbers::pi;
constexpr cplx I(0.0, 1.0);

struct Panel
{
  double a, b;
};

// Eigen's cross() conjugates for complex scalars; this is the bilinear product.
CVec3 cross(const CVec3 &a, const Vec3 &b)
{
  return CVec3(a.y() * b.z() - a.z() * b.y(), a.z() * b.x() - a.x() * b.z(),
               a.x() * b.y() - a.y() * b.x());
}

double meridian_distance(const FourierCurve &c, double t, double rho, double z)
{
  return std::hypot(c.rho(t) - rho, c.z(t) - z);
}

// Per source circle, modal integrals over phi of the kernels in ambient components at the
// target (rho_p, 0, z_p).
struct CircleIntegrals
{
  cplx g = 0.0;
  CVec3 grad = CVec3::Zero();                  // int grad_x g
  CVec3 g_tau = CVec3::Zero(), g_phi = CVec3::Zero();      // int g e_b(y)
  CVec3 curl_tau = CVec3::Zero(), curl_phi = CVec3::Zero();  // int grad_x g x e_b(y)
};

CircleIntegrals circle_integrals(double rho_p, double z_p, const CurvePoint &y, int mode,
                                 cplx k, int points)
{
  const double drho = rho_p - y.rho, dz = z_p - y.z;
  const double scale = std::hypot(drho, dz) / std::sqrt(rho_p * y.rho);
  const double width = std::min(pi / 4, 8.0 / (std::abs(k) * std::max(rho_p, y.rho) +
                                               std::abs(mode) + 1.0));
  const AzimuthalRule rule = graded_azimuthal_rule(scale, width, points);
  const RadialKernel kernel{RadialKernel::Kind::helmholtz, k};
  CircleIntegrals out;
  for (std::size_t q = 0; q < rule.nodes.size(); q++)
  {
    const double phi = rule.nodes[q];
    const double c = std::cos(phi), s = std::sin(phi);
    const double sh = std::sin(0.5 * phi);
    const double c1 = 2.0 * sh * sh;
    const Vec3 d(drho + y.rho * c1, -y.rho * s, dz);
    const double r = std::sqrt(drho * drho + dz * dz + 2.0 * rho_p * y.rho * c1);
    cplx dgdr;
    const cplx g = kernel.eval(r, &dgdr);
    const cplx w = rule.weights[q] * cplx(std::cos(mode * phi), std::sin(mode * phi));
    const cplx gw = g * w;
    const CVec3 gradw = d.cast<cplx>() * (dgdr / r * w);
    const Vec3 et(y.tau_rho * c, y.tau_rho * s, y.tau_z);
    const Vec3 ep(-s, c, 0.0);
    out.g += gw;
    out.grad += gradw;
    out.g_tau += et.cast<cplx>() * gw;
    out.g_phi += ep.cast<cplx>() * gw;
    out.curl_tau += cross(gradw, et);
    out.curl_phi += cross(gradw, ep);
  }
  return out;
}

}  // namespace

FieldEvaluator::FieldEvaluator(const SurfaceGrid &grid, FieldConfig cfg)
  : grid_(&grid), cfg_(cfg)
{
  double rmin = 1e300, rmax = -1e300, zmin = 1e300, zmax = -1e300;
  for (const CurvePoint &p : grid.nodes)
  {
    rmin = std::min(rmin, p.rho);
    rmax = std::max(rmax, p.rho);
    zmin = std::min(zmin, p.z);
    zmax = std::max(zmax, p.z);
  }
  h_min_ = cfg_.h_min > 0.0 ? cfg_.h_min : 1e-3 * std::max(rmax - rmin, zmax - zmin);
}

double FieldEvaluator::distance_to_surface(const Vec3 &point) const
{
  const double rho = std::hypot(point.x(), point.y()), z = point.z();
  const FourierCurve &c = grid_->curve;
  const int m = 2048;
  int best = 0;
  double dbest = 1e300;
  for (int i = 0; i < m; i++)
  {
    const double d = meridian_distance(c, 2.0 * pi * i / m, rho, z);
    if (d < dbest)
    {
      dbest = d;
      best = i;
    }
  }
  // Golden-section refinement around the best sample.
  double a = 2.0 * pi * (best - 1) / m, b = 2.0 * pi * (best + 1) / m;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 60; it++)
  {
    const double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    if (meridian_distance(c, x1, rho, z) < meridian_distance(c, x2, rho, z))
    {
      b = x2;
    }
    else
    {
      a = x1;
    }
  }
  return std::min(dbest, meridian_distance(c, 0.5 * (a + b), rho, z));
}

EMFieldSample FieldEvaluator::evaluate(const Vec3 &point, const std::vector<ModalSources> &sources,
                                       Wavenumber k, MediumScale scale) const
{
  const double dist = distance_to_surface(point);
  if (dist < h_min_)
  {
    throw NearEvaluationError("evaluation point at distance " + std::to_string(dist) +
                              " from the surface is inside the excluded layer");
  }
  const SurfaceGrid &grid = *grid_;
  const int n = grid.n_nodes;
  const double rho_p = std::hypot(point.x(), point.y()), z_p = point.z();
  const double theta_p = std::atan2(point.y(), point.x());

  // Panels in t refined until each is no longer (in arc length) than its distance to the
  // target in the meridian plane.
  std::vector<Panel> accepted, work;
  for (int p = 0; p < 16; p++)
  {
    work.push_back({2.0 * pi * p / 16, 2.0 * pi * (p + 1) / 16});
  }
  while (!work.empty())
  {
    const Panel pn = work.back();
    work.pop_back();
    const double tm = 0.5 * (pn.a + pn.b);
    double speed = 0.0;
    for (double t : {pn.a, tm, pn.b})
    {
      speed = std::max(speed, std::hypot(grid.curve.drho(t), grid.curve.dz(t)));
    }
    const double len = (pn.b - pn.a) * speed;
    const double d = meridian_distance(grid.curve, tm, rho_p, z_p);
    if (len <= d || pn.b - pn.a < 1e-12)
    {
      accepted.push_back(pn);
    }
    else
    {
      work.push_back({pn.a, tm});
      work.push_back({tm, pn.b});
    }
  }

  const GaussLegendre &gl = gauss_legendre(cfg_.panel_points);
  const cplx kk = k.value();
  CVec3 e = CVec3::Zero(), h = CVec3::Zero();
  for (const ModalSources &src : sources)
  {
    CVec3 e0 = CVec3::Zero(), h0 = CVec3::Zero();
    for (const Panel &pn : accepted)
    {
      const double c = 0.5 * (pn.a + pn.b), r = 0.5 * (pn.b - pn.a);
      for (std::size_t q = 0; q < gl.nodes.size(); q++)
      {
        const double t = c + r * gl.nodes[q];
        const CurvePoint y = evaluate_curve(grid.curve, t);
        const Eigen::VectorXcd w = periodic_interp_weights(n, t).cast<cplx>();
        const cplx rr = w.dot(src.r), qq = w.dot(src.q);
        const cplx jt = w.dot(src.j.head(n)), jp = w.dot(src.j.tail(n));
        const cplx mt = w.dot(src.m.head(n)), mp = w.dot(src.m.tail(n));
        const CircleIntegrals ci = circle_integrals(rho_p, z_p, y, src.mode, kk,
                                                    cfg_.panel_points);
        const double wt = r * gl.weights[q] * y.jacobian();
        const CVec3 sj = ci.g_tau * jt + ci.g_phi * jp;
        const CVec3 sm = ci.g_tau * mt + ci.g_phi * mp;
        const CVec3 cj = ci.curl_tau * jt + ci.curl_phi * jp;
        const CVec3 cm = ci.curl_tau * mt + ci.curl_phi * mp;
        e0 += wt * (I * kk * sj - ci.grad * rr - cm);
        h0 += wt * (I * kk * sm - ci.grad * qq + cj);
      }
    }
    // Rotate from the meridian theta = 0 to the target's angle.
    const double cs = std::cos(theta_p), sn = std::sin(theta_p);
    const cplx ph = std::exp(I * (src.mode * theta_p));
    auto rotate = [&](const CVec3 &v) -> CVec3
    { return CVec3(cs * v.x() - sn * v.y(), sn * v.x() + cs * v.y(), v.z()) * ph; };
    e += rotate(e0);
    h += rotate(h0);
  }
  return {point, scale.sqrt_mu * e, scale.sqrt_eps * h};
}

double maxwell_residual(const Vec3 &x, const FieldFunction &field, cplx omega, cplx eps,
                        cplx mu, double step, double length)
{
  // Jacobians d F_a / d x_b by Richardson-extrapolated central differences.
  auto jacobians = [&](double hs, Eigen::Matrix3cd &je, Eigen::Matrix3cd &jh)
  {
    for (int b = 0; b < 3; b++)
    {
      Vec3 dx = Vec3::Zero();
      dx[b] = hs;
      const auto fp = field(x + dx), fm = field(x - dx);
      je.col(b) = (fp.first - fm.first) / (2.0 * hs);
      jh.col(b) = (fp.second - fm.second) / (2.0 * hs);
    }
  };
  Eigen::Matrix3cd je1, jh1, je2, jh2;
  jacobians(step, je1, jh1);
  jacobians(0.5 * step, je2, jh2);
  const Eigen::Matrix3cd je = (4.0 * je2 - je1) / 3.0, jh = (4.0 * jh2 - jh1) / 3.0;
  auto curl = [](const Eigen::Matrix3cd &j)
  { return CVec3(j(2, 1) - j(1, 2), j(0, 2) - j(2, 0), j(1, 0) - j(0, 1)); };
  const auto f = field(x);
  const cplx k = std::sqrt(omega * eps) * std::sqrt(omega * mu);
  const double norm =
    (f.first.norm() + f.second.norm()) * std::max(std::abs(k), 1.0 / length);
  const double r1 = (curl(je) - I * omega * mu * f.second).norm();
  const double r2 = (curl(jh) + I * omega * eps * f.first).norm();
  const double r3 = std::abs(je.trace());
  const double r4 = std::abs(jh.trace());
  return std::max({r1, r2, r3, r4}) / std::max(norm, 1e-300);
}

}  // namespace debye
