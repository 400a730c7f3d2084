// SPDX-License-Identifier: Apache-2.0

#ifndef DEBYE_KERNELS_HPP
#define DEBYE_KERNELS_HPP

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#include "debye/geometry.hpp"

namespace debye
{

using cplx = std::complex<double>;
using CVec3 = Eigen::Vector3cd;

// Complex wavenumber normalized to 0 <= arg k < pi.
class Wavenumber
{
public:
  Wavenumber() = default;
  Wavenumber(cplx k);  // NOLINT: implicit by design
  Wavenumber(double k) : Wavenumber(cplx(k, 0.0)) {}

  cplx value() const { return k_; }
  operator cplx() const { return k_; }

private:
  cplx k_ = 0.0;
};

class KernelDomainError : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

// g_k(x, y) = e^{ik|x-y|} / (4 pi |x-y|).
cplx green(const Vec3 &x, const Vec3 &y, Wavenumber k);
// Gradient with respect to x.
CVec3 green_grad(const Vec3 &x, const Vec3 &y, Wavenumber k);
cplx green_normal_deriv(const Vec3 &x, const Vec3 &y, Wavenumber k, const Vec3 &n_x);
// (g_k - g_0) / k, by series for |k| r < 1 and direct difference otherwise. At k = 0 it
// returns the limit i / (4 pi).
cplx green_diff_over_k(const Vec3 &x, const Vec3 &y, Wavenumber k);

// A radial kernel G(r) with derivative dG/dr: either the Helmholtz Green's function or the
// difference quotient (g_k - g_0)/k.
struct RadialKernel
{
  enum class Kind
  {
    helmholtz,
    difference
  };
  Kind kind = Kind::helmholtz;
  cplx k = 0.0;

  // Returns G(r); writes dG/dr to *dgdr.
  cplx eval(double r, cplx *dgdr) const;
};

cplx diff_over_k_radial(double r, cplx k);

}  // namespace debye

#endif  // DEBYE_KERNELS_HPP
