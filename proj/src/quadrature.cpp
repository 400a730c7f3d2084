// SPDX-License-Identifier: Apache-2.0

#include "debye/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "debye/errors.hpp"

namespace debye
{

namespace
{

constexpr double pi = std::numbers::pi;

GaussLegendre compute_gauss_legendre(int n)
{
  GaussLegendre gl;
  gl.nodes.resize(n);
  gl.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; i++)
  {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; it++)
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; k++)
      {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1)
      {
        p0 = 1.0;
        p1 = x;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
      {
        break;
      }
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; k++)
    {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    gl.nodes[i] = -x;
    gl.nodes[n - 1 - i] = x;
    gl.weights[i] = w;
    gl.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1)
  {
    gl.nodes[n / 2] = 0.0;
  }
  return gl;
}

void append_panel(AzimuthalRule &rule, double a, double b, const GaussLegendre &gl)
{
  const double c = 0.5 * (a + b), r = 0.5 * (b - a);
  for (std::size_t k = 0; k < gl.nodes.size(); k++)
  {
    rule.nodes.push_back(c + r * gl.nodes[k]);
    rule.weights.push_back(r * gl.weights[k]);
  }
}

cplx panel_sum(const std::function<cplx(double)> &f, double a, double b,
               const GaussLegendre &gl)
{
  const double c = 0.5 * (a + b), r = 0.5 * (b - a);
  cplx acc = 0.0;
  for (std::size_t k = 0; k < gl.nodes.size(); k++)
  {
    acc += gl.weights[k] * f(c + r * gl.nodes[k]);
  }
  return r * acc;
}

}  // namespace

const GaussLegendre &gauss_legendre(int n)
{
  static std::mutex mtx;
  static std::map<int, std::unique_ptr<GaussLegendre>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto &slot = cache[n];
  if (!slot)
  {
    slot = std::make_unique<GaussLegendre>(compute_gauss_legendre(n));
  }
  return *slot;
}

const AlpertRule &alpert_rule(int order)
{
  switch (order)
  {
    case 8: return alpert_order8();
    case 16: return alpert_order16();
    default: throw ConfigError("quadrature order must be 8 or 16, got " + std::to_string(order));
  }
}

Eigen::VectorXd periodic_interp_weights(int n_nodes, double t)
{
  const double h = 2.0 * pi / n_nodes;
  Eigen::VectorXd w(n_nodes);
  for (int j = 0; j < n_nodes; j++)
  {
    const double d = t - j * h;
    const double s = std::sin(0.5 * d);
    if (std::abs(s) < 1e-14)
    {
      w.setZero();
      w[j] = 1.0;
      return w;
    }
    w[j] = std::sin(0.5 * n_nodes * d) * std::cos(0.5 * d) / (s * n_nodes);
  }
  return w;
}

cplx alpert_integrate(const Eigen::VectorXcd &samples, int singular_index,
                      const AlpertRule &rule, const std::function<cplx(double)> &kernel)
{
  const int n = static_cast<int>(samples.size());
  if (n < 4 * rule.skip)
  {
    throw ConfigError("grid of " + std::to_string(n) + " nodes is too small for a rule skipping " +
                      std::to_string(rule.skip) + " neighbours");
  }
  const double h = 2.0 * pi / n;
  const double t0 = singular_index * h;
  cplx acc = 0.0;
  for (int l = rule.skip; l <= n - rule.skip; l++)
  {
    const int j = (singular_index + l) % n;
    acc += kernel(t0 + l * h) * samples[j];
  }
  for (std::size_t k = 0; k < rule.nodes.size(); k++)
  {
    for (int sgn : {1, -1})
    {
      const double t = t0 + sgn * rule.nodes[k] * h;
      const cplx f = periodic_interp_weights(n, t).cast<cplx>().dot(samples);
      acc += rule.weights[k] * kernel(t) * f;
    }
  }
  return h * acc;
}

AzimuthalRule graded_azimuthal_rule(double scale, double max_width, int points)
{
  const GaussLegendre &gl = gauss_legendre(points);
  const double cap = std::min(max_width, pi / 4);
  std::vector<double> breaks{0.0};
  double pos = 0.0;
  while (pos < pi)
  {
    const double w = pos == 0.0 ? std::min(scale, cap) : std::min(pos, cap);
    pos = std::min(pi, pos + w);
    breaks.push_back(pos);
  }
  AzimuthalRule rule;
  for (std::size_t p = 0; p + 1 < breaks.size(); p++)
  {
    append_panel(rule, breaks[p], breaks[p + 1], gl);
    append_panel(rule, -breaks[p + 1], -breaks[p], gl);
  }
  return rule;
}

AzimuthalResult AzimuthalIntegrator::integrate(const std::function<cplx(double)> &kernel,
                                               int mode) const
{
  const GaussLegendre &gl = gauss_legendre(16);
  auto f = [&](double d) { return kernel(d) * std::exp(cplx(0.0, -mode * d)); };

  struct Panel
  {
    double a, b;
    int depth;
  };
  // Initial panels graded toward 0 from both sides, on [-pi, pi].
  std::vector<Panel> work;
  double lo = 1e-6;
  work.push_back({0.0, lo, 0});
  work.push_back({-lo, 0.0, 0});
  while (lo < pi)
  {
    const double hi = std::min(pi, 4.0 * lo);
    work.push_back({lo, hi, 0});
    work.push_back({-hi, -lo, 0});
    lo = hi;
  }

  // Rough magnitude for the relative test.
  double scale = 0.0;
  for (const Panel &p : work)
  {
    scale += std::abs(panel_sum(f, p.a, p.b, gl));
  }
  scale = std::max(scale, 1e-300);

  AzimuthalResult res;
  res.value = 0.0;
  while (!work.empty())
  {
    const Panel p = work.back();
    work.pop_back();
    const double m = 0.5 * (p.a + p.b);
    const cplx coarse = panel_sum(f, p.a, p.b, gl);
    const cplx fine = panel_sum(f, p.a, m, gl) + panel_sum(f, m, p.b, gl);
    const double err = std::abs(fine - coarse);
    const double width_share = (p.b - p.a) / (2.0 * pi);
    if (err <= tol * scale * std::max(width_share, 1e-3) || p.depth >= max_depth)
    {
      if (err > tol * scale * std::max(width_share, 1e-3))
      {
        res.converged = false;
      }
      res.value += fine;
      res.error += err;
    }
    else
    {
      work.push_back({p.a, m, p.depth + 1});
      work.push_back({m, p.b, p.depth + 1});
    }
  }
  res.error /= scale;
  if (res.error > tol)
  {
    res.converged = false;
  }
  return res;
}

}  // namespace debye
