// SPDX-License-Identifier: Apache-2.0

#ifndef DEBYE_SURFACE_CALC_HPP
#define DEBYE_SURFACE_CALC_HPP

#include <complex>

#include <Eigen/Dense>

#include "debye/geometry.hpp"

namespace debye
{

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Coefficient of e^{i n theta} of a scalar on the surface, sampled at the grid nodes.
struct ModalScalar
{
  int mode = 0;
  CVector values;
};

// Coefficient of e^{i n theta} of a tangent field, in the (tau, theta) frame.
struct ModalTangentField
{
  int mode = 0;
  CVector tau, theta;

  // [tau; theta], length 2N.
  CVector stacked() const;
  static ModalTangentField from_stacked(int mode, const CVector &v);
};

// Spectral differentiation matrix on N equispaced periodic nodes (Nyquist mode dropped).
Eigen::MatrixXd spectral_diff_matrix(int n_nodes);

// Per-mode surface calculus on a surface of revolution. Tangent fields act as stacked
// [tau; theta] vectors of length 2N in the matrix forms.
class SurfaceCalculus
{
public:
  SurfaceCalculus(const SurfaceGrid &grid, int mode);

  int mode() const { return mode_; }
  int size() const { return n_; }
  const SurfaceGrid &grid() const { return *grid_; }

  // dGamma f = (f' / |gamma'|) tau + (i n f / rho) theta.
  ModalTangentField d_gamma(const ModalScalar &f) const;
  // Rotation by +90 degrees about n: tau -> theta, theta -> -tau.
  static ModalTangentField star2(const ModalTangentField &v);
  // Surface divergence (1/(|gamma'| rho)) (rho v_tau)' + (i n / rho) v_theta.
  ModalScalar dstar_gamma(const ModalTangentField &v) const;
  // n . curl v = -div(star2 v).
  ModalScalar curl_gamma(const ModalTangentField &v) const;
  // (1/(|gamma'| rho)) ((rho/|gamma'|) f')' - (n/rho)^2 f, with the second-order part
  // computed on a doubled grid so that the highest resolved frequency is not annihilated.
  ModalScalar laplace_beltrami(const ModalScalar &f) const;
  // Mean-zero u with laplace_beltrami(u) = f. Mode 0 requires f to have zero surface mean
  // (PreconditionError otherwise).
  ModalScalar r0_apply(const ModalScalar &f) const;

  // Matrix forms.
  const CMatrix &dg() const { return dg_; }        // 2N x N
  const CMatrix &ds() const { return ds_; }        // N x 2N
  const CMatrix &lap() const { return lap_; }      // N x N
  // R0 composed with removal of the surface mean, so it is defined on all inputs.
  const CMatrix &r0() const { return r0_; }        // N x N
  static CMatrix star2_matrix(int n_nodes);        // 2N x 2N

  // Surface mean functional: mean(f) = mean_row() * f, weights J_i / sum J.
  const Eigen::RowVectorXd &mean_row() const { return mean_row_; }
  double surface_mean_abs(const ModalScalar &f) const;

private:
  const SurfaceGrid *grid_;
  int mode_, n_;
  CMatrix dg_, ds_, lap_, r0_;
  Eigen::RowVectorXd mean_row_;
};

// Harmonic tangent fields of mode 0: psi_tau = tau/rho and psi_theta = theta/rho.
struct HarmonicBasis
{
  ModalTangentField psi_tau, psi_theta;
};
HarmonicBasis harmonic_basis(const SurfaceGrid &grid);

// Circulation along the meridian loop theta = 0 (A cycle) and the toroidal circle through
// node b_index (B cycle). The B circulation vanishes for n != 0.
cplx circulation_a(const SurfaceGrid &grid, const ModalTangentField &v);
cplx circulation_b(const SurfaceGrid &grid, int b_index, const ModalTangentField &v);
// Row functionals acting on stacked [tau; theta] vectors.
Eigen::RowVectorXcd circulation_a_row(const SurfaceGrid &grid);
Eigen::RowVectorXcd circulation_b_row(const SurfaceGrid &grid, int b_index, int mode);

}  // namespace debye

#endif  // DEBYE_SURFACE_CALC_HPP
