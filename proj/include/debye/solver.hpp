// SPDX-License-Identifier: Apache-2.0

#ifndef DEBYE_SOLVER_HPP
#define DEBYE_SOLVER_HPP

#include <memory>
#include <vector>

#include "debye/debye_sources.hpp"

namespace debye
{

// Right-hand side data of one mode.
//
// Dielectric: j_in and m_in are the jumps E_t(Omega) - E_t(D) and H_t(Omega) - H_t(D) as
// tangent fields, f = mu1 H_n(Omega) - mu0 H_n(D) and h = -eps1 E_n(Omega) + eps0 E_n(D).
// PEC: j_in is the required scattered E_t, f the required scattered H_n (h, m_in unused)
// and disk_flux the integral of H . z over the spanning disk of the B cycle.
struct BoundaryData
{
  int mode = 0;
  ModalTangentField j_in, m_in;
  CVector f, h;
  cplx disk_flux = 0.0;

  static BoundaryData zero(int mode, int n_nodes);
};

// f = curl_Gamma j_in / (i omega) and h = curl_Gamma m_in / (i omega), the values implied by
// Maxwell's equations for omega != 0.
BoundaryData dielectric_data_from_tangential(const SurfaceCalculus &calc,
                                             const ModalTangentField &j_in,
                                             const ModalTangentField &m_in, double omega);

enum class ProblemKind
{
  dielectric,
  pec
};

// Constant multiple of the identity sitting on a diagonal block of the matrix.
struct IdentityBlock
{
  int row, col, size;
  cplx coeff;
};

struct ModalSystem
{
  ProblemKind kind = ProblemKind::dielectric;
  int mode = 0;
  int n_nodes = 0;
  CMatrix matrix;
  CVector rhs;
  CVector solution;                    // empty until solved
  double condition = -1.0;             // < 0 until computed
  std::vector<IdentityBlock> identity_blocks;

  // matrix minus the identity blocks (the part of order -1 and smoother).
  CMatrix off_identity() const;
};

struct SolverConfig
{
  TableConfig tables;
  // Circulation rows are divided by the cycle length so they are O(1) like the others.
  bool normalize_cycles = true;
};

// Operators for the dielectric system of one mode and frequency; independent of the
// clutching map and the data, so sweeps over t_c reuse them.
struct DielectricOperators
{
  std::shared_ptr<const SurfaceCalculus> calc;
  std::shared_ptr<const OperatorSet> ops1, ops0;
  CMatrix g0;  // single layer at k = 0
};

// `g0` may be passed in to share the static single layer across frequencies.
DielectricOperators prepare_dielectric(const SurfaceGrid &grid, int mode,
                                       const MaterialParams &params,
                                       const SolverConfig &cfg = {},
                                       const CMatrix *g0 = nullptr);
CMatrix static_single_layer(const SurfaceGrid &grid, int mode, const TableConfig &cfg = {});

// Throws ParameterError when (mu0 + mu1)(eps0 + eps1) or mu0 mu1 eps0 eps1 vanishes.
ModalSystem assemble_dielectric(const DielectricOperators &ops, const MaterialParams &params,
                                const ClutchingMap &clutch, const BoundaryData &data,
                                const SolverConfig &cfg = {});
ModalSystem assemble_dielectric(const SurfaceGrid &grid, int mode, const MaterialParams &params,
                                const ClutchingMap &clutch, const BoundaryData &data,
                                const SolverConfig &cfg = {});

// PEC in the exterior medium (eps1, mu1, k1).
ModalSystem assemble_pec(const SurfaceGrid &grid, int mode, const MaterialParams &params,
                         const BoundaryData &data, const SolverConfig &cfg = {});

// Dense LU with one step of refinement. Stores the solution in sys. Throws
// ConditioningError when the matrix is singular to working precision or the residual
// exceeds 1e-12 relative.
DebyeSourceSet solve(ModalSystem &sys);

// sigma_max / sigma_min from a full SVD; also cached in sys.condition.
double condition_number(ModalSystem &sys);
double condition_number(const CMatrix &a);

}  // namespace debye

#endif  // DEBYE_SOLVER_HPP
