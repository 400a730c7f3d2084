// SPDX-License-Identifier: Apache-2.0

#include "debye/surface_calc.hpp"

#include <cmath>
#include <numbers>

#include "debye/errors.hpp"
#include "debye/quadrature.hpp"

namespace debye
{

namespace
{

constexpr double pi = std::numbers::pi;

// Samples at the N coarse nodes of the part of a 2N-grid function with |k| <= N/2.
Eigen::MatrixXd truncation_matrix(int n)
{
  const int m = 2 * n;
  Eigen::MatrixXd t(n, m);
  for (int j = 0; j < n; j++)
  {
    for (int l = 0; l < m; l++)
    {
      const double x = 2.0 * pi * j / n - 2.0 * pi * l / m;
      const double s = std::sin(0.5 * x);
      t(j, l) = std::abs(s) < 1e-14 ? (n + 1.0) / m : std::sin(0.5 * (n + 1) * x) / (s * m);
    }
  }
  return t;
}

}  // namespace

CVector ModalTangentField::stacked() const
{
  CVector v(tau.size() + theta.size());
  v << tau, theta;
  return v;
}

ModalTangentField ModalTangentField::from_stacked(int mode, const CVector &v)
{
  const Eigen::Index n = v.size() / 2;
  return {mode, v.head(n), v.tail(n)};
}

Eigen::MatrixXd spectral_diff_matrix(int n_nodes)
{
  const double h = 2.0 * pi / n_nodes;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n_nodes, n_nodes);
  for (int i = 0; i < n_nodes; i++)
  {
    for (int j = 0; j < n_nodes; j++)
    {
      if (i != j)
      {
        const int diff = i - j;
        const double sgn = (diff % 2 == 0) ? 1.0 : -1.0;
        d(i, j) = 0.5 * sgn / std::tan(0.5 * diff * h);
      }
    }
  }
  return d;
}

SurfaceCalculus::SurfaceCalculus(const SurfaceGrid &grid, int mode)
  : grid_(&grid), mode_(mode), n_(grid.n_nodes)
{
  const int n = n_;
  Eigen::VectorXd rho(n), speed(n), jac(n);
  for (int i = 0; i < n; i++)
  {
    rho[i] = grid.nodes[i].rho;
    speed[i] = grid.nodes[i].speed;
    jac[i] = grid.nodes[i].jacobian();
  }
  const Eigen::MatrixXd d = spectral_diff_matrix(n);
  const cplx in(0.0, static_cast<double>(mode));

  dg_ = CMatrix::Zero(2 * n, n);
  dg_.topRows(n) = (speed.cwiseInverse().asDiagonal() * d).cast<cplx>();
  dg_.bottomRows(n).diagonal() = in * rho.cwiseInverse().cast<cplx>();

  ds_ = CMatrix::Zero(n, 2 * n);
  ds_.leftCols(n) =
    ((speed.cwiseProduct(rho)).cwiseInverse().asDiagonal() * d * rho.asDiagonal()).cast<cplx>();
  ds_.rightCols(n).diagonal() = in * rho.cwiseInverse().cast<cplx>();

  // Second-order part on the doubled grid.
  const int m = 2 * n;
  Eigen::MatrixXd up(m, n);
  Eigen::VectorXd coef(m);
  for (int l = 0; l < m; l++)
  {
    const double t = 2.0 * pi * l / m;
    up.row(l) = periodic_interp_weights(n, t).transpose();
    const CurvePoint p = evaluate_curve(grid.curve, t);
    coef[l] = p.rho / p.speed;
  }
  const Eigen::MatrixXd d2 = spectral_diff_matrix(m);
  const Eigen::MatrixXd inner = coef.asDiagonal() * (d2 * up);
  const Eigen::MatrixXd outer = truncation_matrix(n) * (d2 * inner);
  Eigen::MatrixXd lap = (speed.cwiseProduct(rho)).cwiseInverse().asDiagonal() * outer;
  lap.diagonal() -= (static_cast<double>(mode) * mode) * rho.cwiseAbs2().cwiseInverse();
  lap_ = lap.cast<cplx>();

  mean_row_ = jac.transpose() / jac.sum();

  if (mode == 0)
  {
    // Bordered system [L 1; w 0] fixes the constant null vector.
    CMatrix b = CMatrix::Zero(n + 1, n + 1);
    b.topLeftCorner(n, n) = lap_;
    b.topRightCorner(n, 1).setOnes();
    b.bottomLeftCorner(1, n) = mean_row_.cast<cplx>();
    CMatrix rhs = CMatrix::Zero(n + 1, n);
    rhs.topRows(n) = CMatrix::Identity(n, n) -
                     CVector::Ones(n) * mean_row_.cast<cplx>();
    r0_ = b.partialPivLu().solve(rhs).topRows(n);
  }
  else
  {
    r0_ = lap_.partialPivLu().inverse();
  }
}

ModalTangentField SurfaceCalculus::d_gamma(const ModalScalar &f) const
{
  return ModalTangentField::from_stacked(mode_, dg_ * f.values);
}

ModalTangentField SurfaceCalculus::star2(const ModalTangentField &v)
{
  return {v.mode, -v.theta, v.tau};
}

ModalScalar SurfaceCalculus::dstar_gamma(const ModalTangentField &v) const
{
  return {mode_, ds_ * v.stacked()};
}

ModalScalar SurfaceCalculus::curl_gamma(const ModalTangentField &v) const
{
  ModalScalar s = dstar_gamma(star2(v));
  s.values = -s.values;
  return s;
}

ModalScalar SurfaceCalculus::laplace_beltrami(const ModalScalar &f) const
{
  return {mode_, lap_ * f.values};
}

double SurfaceCalculus::surface_mean_abs(const ModalScalar &f) const
{
  return std::abs((mean_row_.cast<cplx>() * f.values)(0));
}

ModalScalar SurfaceCalculus::r0_apply(const ModalScalar &f) const
{
  if (mode_ == 0)
  {
    const double mean = std::abs((mean_row_.cast<cplx>() * f.values)(0));
    const double scale = f.values.cwiseAbs().maxCoeff();
    if (mean > 1e-10 * std::max(scale, 1e-300))
    {
      throw PreconditionError("R0 applied to a mode-0 density with nonzero surface mean");
    }
  }
  return {mode_, r0_ * f.values};
}

CMatrix SurfaceCalculus::star2_matrix(int n_nodes)
{
  CMatrix s = CMatrix::Zero(2 * n_nodes, 2 * n_nodes);
  for (int i = 0; i < n_nodes; i++)
  {
    s(i, n_nodes + i) = -1.0;
    s(n_nodes + i, i) = 1.0;
  }
  return s;
}

HarmonicBasis harmonic_basis(const SurfaceGrid &grid)
{
  const int n = grid.n_nodes;
  HarmonicBasis hb;
  hb.psi_tau = {0, CVector::Zero(n), CVector::Zero(n)};
  hb.psi_theta = {0, CVector::Zero(n), CVector::Zero(n)};
  for (int i = 0; i < n; i++)
  {
    hb.psi_tau.tau[i] = 1.0 / grid.nodes[i].rho;
    hb.psi_theta.theta[i] = 1.0 / grid.nodes[i].rho;
  }
  return hb;
}

Eigen::RowVectorXcd circulation_a_row(const SurfaceGrid &grid)
{
  const int n = grid.n_nodes;
  Eigen::RowVectorXcd row = Eigen::RowVectorXcd::Zero(2 * n);
  for (int i = 0; i < n; i++)
  {
    row[i] = grid.nodes[i].speed * grid.h();
  }
  return row;
}

Eigen::RowVectorXcd circulation_b_row(const SurfaceGrid &grid, int b_index, int mode)
{
  const int n = grid.n_nodes;
  Eigen::RowVectorXcd row = Eigen::RowVectorXcd::Zero(2 * n);
  if (mode == 0)
  {
    row[n + b_index] = 2.0 * pi * grid.nodes[b_index].rho;
  }
  return row;
}

cplx circulation_a(const SurfaceGrid &grid, const ModalTangentField &v)
{
  return (circulation_a_row(grid) * v.stacked())(0);
}

cplx circulation_b(const SurfaceGrid &grid, int b_index, const ModalTangentField &v)
{
  return (circulation_b_row(grid, b_index, v.mode) * v.stacked())(0);
}

}  // namespace debye
