// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "debye/kernels.hpp"

using namespace debye;
constexpr double pi = std::numbers::pi;
constexpr cplx I(0.0, 1.0);

namespace
{
const Vec3 origin(0.0, 0.0, 0.0);
Vec3 at(double r) { return Vec3(0.6 * r, 0.0, 0.8 * r); }
double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("Helmholtz Green's function values")
{
  CHECK(rel(green(at(1.0), origin, 0.0), 1.0 / (4 * pi)) < 1e-15);
  CHECK(rel(green(at(1.0), origin, pi), -1.0 / (4 * pi)) < 1e-15);
  // e^{2i} / (8 pi), 50-digit reference
  CHECK(rel(green(at(2.0), origin, 1.0), cplx(-0.016557956522133179172, 0.03617979505501205838)) <
        1e-15);
  CHECK(green(origin, at(1.3), 0.7) == green(at(1.3), origin, 0.7));
}

TEST_CASE("wavenumber normalization")
{
  CHECK(Wavenumber(cplx(-2.0, -0.1)).value() == cplx(2.0, 0.1));
  CHECK(Wavenumber(cplx(-1.0, 0.0)).value() == cplx(1.0, 0.0));
  CHECK(Wavenumber(cplx(-1.0, 0.5)).value() == cplx(-1.0, 0.5));
  CHECK(std::signbit(Wavenumber(cplx(3.0, -0.0)).value().imag()) == false);
}

TEST_CASE("gradient")
{
  // Coulomb field along the unit separation.
  const Vec3 x = at(1.0), n = x.normalized();
  CHECK(rel(green_normal_deriv(x, origin, 0.0, n), -1.0 / (4 * pi)) < 1e-15);
  // Radial: no component perpendicular to x - y.
  const Vec3 perp(0.8, 0.0, -0.6);
  for (cplx k : {cplx(0.0), cplx(2.0, 0.3)})
  {
    CHECK(std::abs(green_normal_deriv(x, origin, k, perp)) < 1e-16);
  }
  // Central differences with one Richardson step.
  const Vec3 y(0.1, -0.2, 0.3), x2 = y + Vec3(0.7, 0.0, 0.0).normalized() * 0.7;
  const double h = 1e-3;
  for (int c = 0; c < 3; c++)
  {
    Vec3 e = Vec3::Zero();
    e[c] = 1.0;
    auto fd = [&](double s)
    { return (green(x2 + s * e, y, 2.0) - green(x2 - s * e, y, 2.0)) / (2 * s); };
    const cplx d = (4.0 * fd(h / 2) - fd(h)) / 3.0;
    CHECK(std::abs(green_grad(x2, y, 2.0)[c] - d) < 1e-8);
  }
}

// Extended-precision values of (e^{ikr} - 1) / (4 pi r k).
TEST_CASE("difference kernel against extended precision")
{
  struct Case
  {
    double r;
    cplx k, value;
  };
  const Case cases[] = {
    {1.0, 1e-3, {-0.000039788732457245963385, 0.079577458283036406705}},
    {1.0, 1e-6, {-3.9788735772970518214e-8, 0.079577471545934404973}},
    {1.0, 1e-9, {-3.9788735772973833939e-11, 0.079577471545947667871}},
    {1.0, 1e-12, {-3.9788735772973833942e-14, 0.079577471545947667884}},
    {1.0, 0.8, {-0.030169141508753474377, 0.071356729889836276683}},
    {0.3, 1e-3, {-0.000011936620642367494962, 0.079577470352285600067}},
    {0.7, {2.0, 0.1}, {-0.045108963154907919534, 0.054482554152813601741}},
    {2.5, {1e-3, 1e-4}, {-0.000099455210548794716478, 0.079567442313251906505}},
  };
  for (const Case &c : cases)
  {
    CAPTURE(c.r);
    CAPTURE(c.k);
    CHECK(rel(green_diff_over_k(at(c.r), origin, c.k), c.value) < 1e-13);
    CHECK(rel(diff_over_k_radial(c.r, c.k), c.value) < 1e-13);
  }
}

TEST_CASE("difference kernel static limit")
{
  const cplx lead = I / (4 * pi);
  const cplx v = green_diff_over_k(at(1.0), origin, 1e-14);
  CHECK(std::isfinite(v.real()));
  CHECK(rel(v, lead) < 1e-13);
  CHECK(green_diff_over_k(at(1.0), origin, 0.0) == lead);
  // Series i/(4 pi) (1 + ikr/2 + (ikr)^2/6 + (ikr)^3/24 + ...)
  CHECK(rel(green_diff_over_k(at(1.0), origin, 1e-4), lead * (1.0 + I * 0.5e-4 - 1e-8 / 6.0 - I * 1e-12 / 24.0)) <
        1e-14);
}

TEST_CASE("radial kernels and their derivatives")
{
  for (RadialKernel::Kind kind : {RadialKernel::Kind::helmholtz, RadialKernel::Kind::difference})
  {
    const RadialKernel g{kind, cplx(1.5, 0.2)};
    for (double r : {0.05, 0.9, 3.0})
    {
      const double h = 1e-4 * r;
      cplx d, dp, dm;
      g.eval(r, &d);
      const cplx fd = (g.eval(r + h, &dp) - g.eval(r - h, &dm)) / (2 * h);
      CHECK(std::abs(d - fd) / std::abs(d) < 1e-6);
    }
  }
  cplx d;
  const RadialKernel diff{RadialKernel::Kind::difference, 1e-3};
  CHECK(rel(diff.eval(1.0, &d), cplx(-0.000039788732457245963385, 0.079577458283036406705)) <
        1e-13);
}
