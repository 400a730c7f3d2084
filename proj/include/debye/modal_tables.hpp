// SPDX-License-Identifier: Apache-2.0

#ifndef DEBYE_MODAL_TABLES_HPP
#define DEBYE_MODAL_TABLES_HPP

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "debye/geometry.hpp"
#include "debye/kernels.hpp"
#include "debye/quadrature.hpp"

namespace debye
{

using CMatrix = Eigen::MatrixXcd;

// Azimuthally reduced kernel components. Frames: (tau, theta, n) at the target x and
// (tau, theta) at the source y.
//   S      g
//   Kp     dg/dn_x
//   V_ab   g (e_a(x) . e_b(y)),                   a in {tau, theta, n}, b in {tau, theta}
//   W_ab   (grad_x g . e_a(x))(e_b(y) . n_x) - dg/dn_x (e_b(y) . e_a(x)),  a, b in {tau, theta}
// W is the tangential part of n x curl S[e_b] away from the diagonal.
enum Component : int
{
  S = 0,
  Kp,
  V_tt,
  V_tp,
  V_pt,
  V_pp,
  V_nt,
  V_np,
  W_tt,
  W_tp,
  W_pt,
  W_pp,
  n_components
};

using ComponentMask = unsigned;
constexpr ComponentMask all_components = (1u << n_components) - 1u;
constexpr ComponentMask component_bit(Component c) { return 1u << c; }

struct TableConfig
{
  int order = 16;         // Alpert rule order, 8 or 16
  bool parallel = true;   // OpenMP over target rows; false gives the serial reference
  int azimuthal_points = 16;
  // If nonempty, only these target rows are filled; the rest stay zero.
  std::vector<int> rows;
};

// Discretized boundary operators for one mode: op[c] maps source nodal values to target
// nodal values of int_Gamma K_c(x_i, y) sigma(y) dA_y, Alpert-corrected in t.
struct ModalOperators
{
  int mode = 0;
  RadialKernel kernel;
  ComponentMask mask = 0;
  std::array<CMatrix, n_components> op;

  const CMatrix &operator[](Component c) const { return op[c]; }
};

// One call builds every requested mode, sharing the kernel samples across modes.
std::vector<ModalOperators> build_modal_operators(const SurfaceGrid &grid,
                                                  const RadialKernel &kernel,
                                                  const std::vector<int> &modes,
                                                  ComponentMask mask, const TableConfig &cfg);

// Raw table: entry (i, j) = int K_c(x(t_i, 0), y(t_j, phi)) e^{i n phi} rho(t_j) dphi for
// i != j; diagonal entries are zero (they are never used directly).
CMatrix build_modal_table(Component c, int mode, Wavenumber k, const SurfaceGrid &grid,
                          const TableConfig &cfg = {});

// Azimuthal integrals of all components between a target on the meridian phi = 0 and a
// source circle, for each requested mode. Result is n_modes x n_components.
Eigen::MatrixXcd azimuthal_components(const CurvePoint &x, const CurvePoint &y,
                                      const RadialKernel &kernel, const std::vector<int> &modes,
                                      int points = 16);

}  // namespace debye

#endif  // DEBYE_MODAL_TABLES_HPP
