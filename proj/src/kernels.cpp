// SPDX-License-Identifier: Apache-2.0

#include "debye/kernels.hpp"

#include <cmath>
#include <numbers>

namespace debye
{

namespace
{

constexpr double four_pi = 4.0 * std::numbers::pi;
constexpr cplx I(0.0, 1.0);

double distance(const Vec3 &x, const Vec3 &y)
{
  const double r = (x - y).norm();
  if (!(r > 0.0))
  {
    throw KernelDomainError("Green's function evaluated at coincident points");
  }
  return r;
}

}  // namespace

Wavenumber::Wavenumber(cplx k)
{
  const bool upper = k.imag() > 0.0 || (k.imag() == 0.0 && k.real() >= 0.0);
  k_ = upper ? k : -k;
  if (k_.imag() == 0.0)
  {
    k_.imag(0.0);  // drop a negative zero
  }
}

cplx diff_over_k_radial(double r, cplx k)
{
  const cplx z = I * k * r;
  if (std::abs(z) < 1.0)
  {
    // i sum_j (ikr)^j / (4 pi (j+1)!)
    cplx term = 1.0, acc = 0.0;
    for (int j = 0; j < 30; j++)
    {
      term /= static_cast<double>(j + 1);
      acc += term;
      term *= z;
    }
    return I * acc / four_pi;
  }
  return (std::exp(z) - 1.0) / (four_pi * k * r);
}

cplx RadialKernel::eval(double r, cplx *dgdr) const
{
  const cplx gk = std::exp(I * k * r) / (four_pi * r);
  if (kind == Kind::helmholtz)
  {
    *dgdr = (I * k - 1.0 / r) * gk;
    return gk;
  }
  const cplx z = I * k * r;
  if (std::abs(z) < 1.0)
  {
    // Differentiate the series term by term to avoid the cancellation in i g_k - d/r.
    // G = (i/4pi) sum_j z^j/(j+1)!, dG/dr = (i/4pi) ik sum_{j>=1} j z^{j-1}/(j+1)!.
    cplx acc = 0.0, dacc = 0.0, pw = 1.0, prev = 0.0;
    double fact = 1.0;
    for (int j = 0; j < 30; j++)
    {
      fact *= static_cast<double>(j + 1);
      acc += pw / fact;
      dacc += static_cast<double>(j) * prev / fact;
      prev = pw;
      pw *= z;
    }
    *dgdr = I * (I * k) * dacc / four_pi;
    return I * acc / four_pi;
  }
  const cplx d = diff_over_k_radial(r, k);
  *dgdr = I * gk - d / r;
  return d;
}

cplx green(const Vec3 &x, const Vec3 &y, Wavenumber k)
{
  const double r = distance(x, y);
  return std::exp(I * k.value() * r) / (four_pi * r);
}

CVec3 green_grad(const Vec3 &x, const Vec3 &y, Wavenumber k)
{
  const double r = distance(x, y);
  const cplx g = std::exp(I * k.value() * r) / (four_pi * r);
  const cplx f = (I * k.value() - 1.0 / r) * g / r;
  return (x - y).cast<cplx>() * f;
}

cplx green_normal_deriv(const Vec3 &x, const Vec3 &y, Wavenumber k, const Vec3 &n_x)
{
  return n_x.cast<cplx>().dot(green_grad(x, y, k));
}

cplx green_diff_over_k(const Vec3 &x, const Vec3 &y, Wavenumber k)
{
  return diff_over_k_radial(distance(x, y), k.value());
}

}  // namespace debye
