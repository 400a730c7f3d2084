// SPDX-License-Identifier: Apache-2.0

#ifndef DEBYE_BOUNDARY_OPS_HPP
#define DEBYE_BOUNDARY_OPS_HPP

#include <memory>

#include "debye/modal_tables.hpp"
#include "debye/surface_calc.hpp"

namespace debye
{

// Discrete boundary operators for one mode and wavenumber. Tangent fields are stacked
// [tau; theta] vectors. With V the vector single layer and W the kernel table of
// n x curl S (off-diagonal part):
//   K0 = dS/dn_x,  K1 = star2 dGamma S,  K2t = star2 V_t,  K2n = V_n,
//   K3 = n . curl S[.] = -dstar star2 V_t,  K4 = W.
class OperatorSet
{
public:
  OperatorSet(std::shared_ptr<const SurfaceCalculus> calc, const ModalOperators &tables);

  int mode() const { return calc_->mode(); }
  cplx k() const { return k_; }
  const SurfaceCalculus &calc() const { return *calc_; }

  const CMatrix &single_layer() const { return s_; }   // N x N
  const CMatrix &k0() const { return kp_; }            // N x N
  const CMatrix &vt() const { return vt_; }            // 2N x 2N
  const CMatrix &vn() const { return vn_; }            // N x 2N
  const CMatrix &k4() const { return w_; }             // 2N x 2N
  CMatrix k1() const;
  CMatrix k2t() const;
  const CMatrix &k2n() const { return vn_; }
  CMatrix k3() const;

  // Surface divergence of the tangential trace of -grad S[r], i.e. -Laplace-Beltrami of
  // S[r], using the doubled-grid Laplacian.
  CMatrix div_grad_single_layer() const;

private:
  std::shared_ptr<const SurfaceCalculus> calc_;
  cplx k_;
  CMatrix s_, kp_, vt_, vn_, w_;
};

OperatorSet assemble_operators(std::shared_ptr<const SurfaceCalculus> calc, Wavenumber k,
                               const TableConfig &cfg = {});

// Surface sources of one mode: scalars r, q and tangent currents j, m (stacked).
struct ModalSources
{
  int mode = 0;
  CVector r, q, j, m;

  static ModalSources zero(int mode, int n_nodes);
};

enum class Side
{
  interior,
  exterior
};

// Limits on Gamma of the fields E/sqrt(mu) = ik S[j] - grad S[r] - curl S[m] and
// H/sqrt(eps) = ik S[m] - grad S[q] + curl S[j]:
//   t_xi = E_t x n / sqrt(mu),  t_eta = H_t x n / sqrt(eps)   (stacked tangent fields)
//   n_xi = E . n / sqrt(mu),    n_eta = H . n / sqrt(eps).
struct TraceResult
{
  CVector t_xi, t_eta, n_xi, n_eta;
};

TraceResult traces(const ModalSources &src, const OperatorSet &ops, Side side);

// Tangential E_t / sqrt(mu) and H_t / sqrt(eps) (stacked), the fields themselves rather
// than rotated by x n.
struct TangentialFields
{
  CVector e_t, h_t;
};
TangentialFields tangential_fields(const ModalSources &src, const OperatorSet &ops, Side side);

}  // namespace debye

#endif  // DEBYE_BOUNDARY_OPS_HPP
