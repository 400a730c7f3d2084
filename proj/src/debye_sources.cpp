// SPDX-License-Identifier: Apache-2.0

#include "debye/debye_sources.hpp"

#include <cmath>

#include "debye/errors.hpp"

namespace debye
{

namespace
{

constexpr cplx I(0.0, 1.0);

CMatrix star_rows(const CMatrix &a)
{
  const Eigen::Index n = a.rows() / 2;
  CMatrix b(a.rows(), a.cols());
  b.topRows(n) = -a.bottomRows(n);
  b.bottomRows(n) = a.topRows(n);
  return b;
}

void check_medium(cplx eps, cplx mu, double omega, const char *name)
{
  const double tol = 1e-14;
  if ((omega * eps).imag() < -tol * std::abs(omega * eps) ||
      (omega * mu).imag() < -tol * std::abs(omega * mu))
  {
    throw ParameterError(std::string("medium ") + name +
                         ": Im(omega eps) and Im(omega mu) must be nonnegative");
  }
}

}  // namespace

MaterialParams material_params(cplx eps0, cplx mu0, cplx eps1, cplx mu1, double omega)
{
  if (!(omega >= 0.0) || !std::isfinite(omega))
  {
    throw ParameterError("omega must be finite and nonnegative");
  }
  if (eps0 == 0.0 || mu0 == 0.0 || eps1 == 0.0 || mu1 == 0.0)
  {
    throw ParameterError("material parameters must be nonzero");
  }
  check_medium(eps0, mu0, omega, "D");
  check_medium(eps1, mu1, omega, "Omega");
  if ((mu0 / eps0).real() <= 0.0)
  {
    throw ParameterError("Re(mu0/eps0) must be positive");
  }
  MaterialParams p;
  p.eps0 = eps0;
  p.mu0 = mu0;
  p.eps1 = eps1;
  p.mu1 = mu1;
  p.omega = omega;
  p.sqrt_eps0 = std::sqrt(eps0);
  p.sqrt_mu0 = std::sqrt(mu0);
  p.sqrt_eps1 = std::sqrt(eps1);
  p.sqrt_mu1 = std::sqrt(mu1);
  p.k0 = omega * p.sqrt_eps0 * p.sqrt_mu0;
  p.k1 = omega * p.sqrt_eps1 * p.sqrt_mu1;
  return p;
}

Eigen::Matrix2d ClutchingMap::rotation() const
{
  const double c = std::cos(tc), s = std::sin(tc);
  Eigen::Matrix2d r;
  r << c, -s, s, c;
  return r;
}

int dielectric_unknowns(int n_nodes, int mode) { return 4 * n_nodes + (mode == 0 ? 4 : 0); }

int pec_unknowns(int n_nodes, int mode) { return 2 * n_nodes + (mode == 0 ? 2 : 0); }

CVector pack_dielectric(const DebyeSourceSet &s)
{
  const int n = static_cast<int>(s.r0.size());
  CVector x(dielectric_unknowns(n, s.mode));
  x << s.r0, s.q0, s.r1, s.q1, CVector::Zero(x.size() - 4 * n);
  if (s.mode == 0)
  {
    x.segment(4 * n, 2) = s.aj;
    x.segment(4 * n + 2, 2) = s.am;
  }
  return x;
}

DebyeSourceSet unpack_dielectric(int mode, int n_nodes, const CVector &x)
{
  DebyeSourceSet s;
  s.mode = mode;
  const int n = n_nodes;
  s.r0 = x.segment(0, n);
  s.q0 = x.segment(n, n);
  s.r1 = x.segment(2 * n, n);
  s.q1 = x.segment(3 * n, n);
  if (mode == 0)
  {
    s.aj = x.segment(4 * n, 2);
    s.am = x.segment(4 * n + 2, 2);
  }
  return s;
}

CVector pack_pec(const DebyeSourceSet &s)
{
  const int n = static_cast<int>(s.r.size());
  CVector x = CVector::Zero(pec_unknowns(n, s.mode));
  x.head(n) = s.r;
  x.segment(n, n) = s.q;
  if (s.mode == 0)
  {
    x.segment(2 * n, 2) = s.a;
  }
  return x;
}

DebyeSourceSet unpack_pec(int mode, int n_nodes, const CVector &x)
{
  DebyeSourceSet s;
  s.mode = mode;
  s.r = x.head(n_nodes);
  s.q = x.segment(n_nodes, n_nodes);
  if (mode == 0)
  {
    s.a = x.segment(2 * n_nodes, 2);
  }
  return s;
}

CMatrix harmonic_matrix(const SurfaceGrid &grid)
{
  const HarmonicBasis hb = harmonic_basis(grid);
  CMatrix h(2 * grid.n_nodes, 2);
  h.col(0) = hb.psi_tau.stacked();
  h.col(1) = hb.psi_theta.stacked();
  return h;
}

DielectricMaps dielectric_maps(const SurfaceCalculus &calc, const MaterialParams &p,
                               const ClutchingMap &clutch)
{
  const int n = calc.size(), mode = calc.mode();
  const int u = dielectric_unknowns(n, mode);
  const CMatrix pm = calc.dg() * calc.r0();
  const CMatrix sp = star_rows(pm);
  const cplx w = I * p.omega;
  const cplx s11 = p.sqrt_mu1 * p.sqrt_eps1;
  const cplx ce = p.eps0 * p.sqrt_mu0 / p.sqrt_eps1;
  const cplx cm = p.mu0 * p.sqrt_eps0 / p.sqrt_mu1;
  const cplx fe = p.sqrt_eps1 / p.sqrt_eps0, fm = p.sqrt_mu1 / p.sqrt_mu0;

  DielectricMaps d;
  for (CMatrix *m : {&d.j1, &d.m1, &d.j0, &d.m0})
  {
    m->setZero(2 * n, u);
  }
  for (CMatrix *m : {&d.r0, &d.q0, &d.r1, &d.q1})
  {
    m->setZero(n, u);
  }
  d.r0.middleCols(0, n).setIdentity();
  d.q0.middleCols(n, n).setIdentity();
  d.r1.middleCols(2 * n, n).setIdentity();
  d.q1.middleCols(3 * n, n).setIdentity();

  d.j1.middleCols(2 * n, n) = w * s11 * pm;
  d.j1.middleCols(0, n) = -w * ce * sp;
  d.m1.middleCols(3 * n, n) = w * s11 * pm;
  d.m1.middleCols(n, n) = -w * cm * sp;
  d.j0.middleCols(2 * n, n) = fe * w * s11 * sp;
  d.j0.middleCols(0, n) = fe * w * ce * pm;
  d.m0.middleCols(3 * n, n) = fm * w * s11 * sp;
  d.m0.middleCols(n, n) = fm * w * cm * pm;
  if (mode == 0)
  {
    const CMatrix h = harmonic_matrix(calc.grid());
    const CMatrix hr = h * clutch.rotation().cast<cplx>();
    d.j1.middleCols(4 * n, 2) = h;
    d.m1.middleCols(4 * n + 2, 2) = h;
    d.j0.middleCols(4 * n, 2) = fe * hr;
    d.m0.middleCols(4 * n + 2, 2) = fm * hr;
  }
  return d;
}

PecMaps pec_maps(const SurfaceCalculus &calc, cplx k)
{
  const int n = calc.size(), mode = calc.mode();
  const int u = pec_unknowns(n, mode);
  const CMatrix pm = calc.dg() * calc.r0();
  PecMaps m;
  m.j.setZero(2 * n, u);
  m.r.setZero(n, u);
  m.q.setZero(n, u);
  m.r.middleCols(0, n).setIdentity();
  m.q.middleCols(n, n).setIdentity();
  m.j.middleCols(0, n) = I * k * pm;
  m.j.middleCols(n, n) = -I * k * star_rows(pm);
  if (mode == 0)
  {
    m.j.middleCols(2 * n, 2) = harmonic_matrix(calc.grid());
  }
  m.m = star_rows(m.j);
  return m;
}

std::pair<ModalTangentField, ModalTangentField> pec_currents(const DebyeSourceSet &src,
                                                             const SurfaceCalculus &calc,
                                                             Wavenumber k)
{
  const PecMaps m = pec_maps(calc, k.value());
  const CVector x = pack_pec(src);
  return {ModalTangentField::from_stacked(src.mode, m.j * x),
          ModalTangentField::from_stacked(src.mode, m.m * x)};
}

DielectricCurrents dielectric_currents(const DebyeSourceSet &src, const SurfaceCalculus &calc,
                                       const MaterialParams &params,
                                       const ClutchingMap &clutch)
{
  const DielectricMaps d = dielectric_maps(calc, params, clutch);
  const CVector x = pack_dielectric(src);
  return {ModalTangentField::from_stacked(src.mode, d.j1 * x),
          ModalTangentField::from_stacked(src.mode, d.m1 * x),
          ModalTangentField::from_stacked(src.mode, d.j0 * x),
          ModalTangentField::from_stacked(src.mode, d.m0 * x)};
}

std::pair<ModalSources, ModalSources> dielectric_sources(const DebyeSourceSet &src,
                                                         const SurfaceCalculus &calc,
                                                         const MaterialParams &params,
                                                         const ClutchingMap &clutch)
{
  const DielectricMaps d = dielectric_maps(calc, params, clutch);
  const CVector x = pack_dielectric(src);
  ModalSources ext{src.mode, d.r1 * x, d.q1 * x, d.j1 * x, d.m1 * x};
  ModalSources in{src.mode, d.r0 * x, d.q0 * x, d.j0 * x, d.m0 * x};
  return {ext, in};
}

ModalSources pec_sources(const DebyeSourceSet &src, const SurfaceCalculus &calc, Wavenumber k)
{
  const PecMaps m = pec_maps(calc, k.value());
  const CVector x = pack_pec(src);
  return {src.mode, m.r * x, m.q * x, m.j * x, m.m * x};
}

}  // namespace debye
