// SPDX-License-Identifier: Apache-2.0

#ifndef DEBYE_DEBYE_SOURCES_HPP
#define DEBYE_DEBYE_SOURCES_HPP

#include <tuple>

#include "debye/boundary_ops.hpp"
#include "debye/surface_calc.hpp"

namespace debye
{

// Index 0 is the interior (D), index 1 the exterior (Omega). Square roots are principal
// and k_l = omega sqrt(eps_l) sqrt(mu_l), which lies in the closed upper half plane under
// the sign conditions.
struct MaterialParams
{
  cplx eps0 = 1.0, mu0 = 1.0, eps1 = 1.0, mu1 = 1.0;
  double omega = 0.0;
  cplx sqrt_eps0, sqrt_mu0, sqrt_eps1, sqrt_mu1;
  cplx k0, k1;
};

// Validates Im(omega eps) >= 0 and Im(omega mu) >= 0 for both media, Re(mu0/eps0) > 0 and
// nonzero interior parameters; throws ParameterError otherwise.
MaterialParams material_params(cplx eps0, cplx mu0, cplx eps1, cplx mu1, double omega);

// Clutching map: cos t Id + sin t star2, a rotation by t on the harmonic coefficients.
struct ClutchingMap
{
  double tc = 0.0;
  Eigen::Matrix2d rotation() const;
  Eigen::Vector2cd apply(const Eigen::Vector2cd &a) const { return rotation() * a; }
};

// Scalar Debye sources of one mode. Dielectric problems use r0, q0, r1, q1 and the
// harmonic coefficients aj, am (basis psi_tau, psi_theta); the PEC problem uses r, q, a.
// Harmonic coefficients are only meaningful at mode 0.
struct DebyeSourceSet
{
  int mode = 0;
  CVector r0, q0, r1, q1;
  CVector r, q;
  Eigen::Vector2cd aj = Eigen::Vector2cd::Zero(), am = Eigen::Vector2cd::Zero(),
                   a = Eigen::Vector2cd::Zero();
};

// Number of unknowns in the packed layouts [r0 | q0 | r1 | q1 | aj | am] and [r | q | a].
int dielectric_unknowns(int n_nodes, int mode);
int pec_unknowns(int n_nodes, int mode);
CVector pack_dielectric(const DebyeSourceSet &s);
DebyeSourceSet unpack_dielectric(int mode, int n_nodes, const CVector &x);
CVector pack_pec(const DebyeSourceSet &s);
DebyeSourceSet unpack_pec(int mode, int n_nodes, const CVector &x);

// Linear maps from packed unknowns to sources on each side.
struct DielectricMaps
{
  CMatrix j1, m1, j0, m0;      // 2N x U
  CMatrix r1, q1, r0, q0;      // N x U
};
DielectricMaps dielectric_maps(const SurfaceCalculus &calc, const MaterialParams &p,
                               const ClutchingMap &clutch);

struct PecMaps
{
  CMatrix j, m, r, q;
};
PecMaps pec_maps(const SurfaceCalculus &calc, cplx k);

// Basis matrix [psi_tau psi_theta] as stacked tangent fields (2N x 2).
CMatrix harmonic_matrix(const SurfaceGrid &grid);

// j = ik (dGamma R0 r - star2 dGamma R0 q) + a_tau psi_tau + a_theta psi_theta, m = star2 j.
std::pair<ModalTangentField, ModalTangentField> pec_currents(const DebyeSourceSet &src,
                                                             const SurfaceCalculus &calc,
                                                             Wavenumber k);

struct DielectricCurrents
{
  ModalTangentField j1, m1, j0, m0;
};
DielectricCurrents dielectric_currents(const DebyeSourceSet &src, const SurfaceCalculus &calc,
                                       const MaterialParams &params,
                                       const ClutchingMap &clutch);

// Exterior and interior source sets (for traces and field evaluation) of a dielectric
// solution.
std::pair<ModalSources, ModalSources> dielectric_sources(const DebyeSourceSet &src,
                                                         const SurfaceCalculus &calc,
                                                         const MaterialParams &params,
                                                         const ClutchingMap &clutch);
ModalSources pec_sources(const DebyeSourceSet &src, const SurfaceCalculus &calc, Wavenumber k);

}  // namespace debye

#endif  // DEBYE_DEBYE_SOURCES_HPP
