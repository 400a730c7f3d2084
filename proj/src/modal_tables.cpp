// SPDX-License-Identifier: Apache-2.0

#include "debye/modal_tables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "debye/errors.hpp"

namespace debye
{

namespace
{

constexpr double pi = std::numbers::pi;
constexpr int max_level = 64;

// Graded rules for scales 2^{-level}; a finer scale than needed only costs time.
class RuleCache
{
public:
  RuleCache(double max_width, int points)
  {
    rules_.reserve(max_level + 1);
    for (int l = 0; l <= max_level; l++)
    {
      rules_.push_back(graded_azimuthal_rule(std::ldexp(1.0, -l), max_width, points));
    }
  }

  const AzimuthalRule &for_scale(double scale) const
  {
    int level = scale >= 1.0 ? 0 : static_cast<int>(std::ceil(-std::log2(scale)));
    return rules_[std::clamp(level, 0, max_level)];
  }

private:
  std::vector<AzimuthalRule> rules_;
};

double pair_scale(const CurvePoint &x, const CurvePoint &y)
{
  return std::hypot(x.rho - y.rho, x.z - y.z) / std::sqrt(x.rho * y.rho);
}

double max_panel_width(double abs_k, double rho_max, int max_mode)
{
  return std::min(pi / 4, 8.0 / (abs_k * rho_max + max_mode + 1.0));
}

// Accumulates into out (n_modes x n_components).
void integrate_pair(const CurvePoint &x, const CurvePoint &y, const RadialKernel &kernel,
                    const AzimuthalRule &rule, const std::vector<int> &modes,
                    Eigen::MatrixXcd &out)
{
  out.setZero(static_cast<Eigen::Index>(modes.size()), n_components);
  std::array<cplx, n_components> v;
  const double dz = x.z - y.z;
  const double drho = x.rho - y.rho;
  const double tnx_dot_ty0 = x.nrm_rho * y.tau_rho;
  for (std::size_t q = 0; q < rule.nodes.size(); q++)
  {
    const double phi = rule.nodes[q];
    const double c = std::cos(phi), s = std::sin(phi);
    const double sh = std::sin(0.5 * phi);
    const double c1 = 2.0 * sh * sh;  // 1 - cos(phi)
    const double dx = drho + y.rho * c1;
    const double dy = -y.rho * s;
    const double r2 = drho * drho + dz * dz + 2.0 * x.rho * y.rho * c1;
    const double r = std::sqrt(r2);

    cplx dgdr;
    const cplx g = kernel.eval(r, &dgdr);
    const cplx gr = dgdr / r;  // grad g = gr (x - y)

    const double d_n = x.nrm_rho * dx + x.nrm_z * dz;
    const double d_t = x.tau_rho * dx + x.tau_z * dz;
    const double d_p = dy;
    const double ty_n = (tnx_dot_ty0 + x.nrm_z * y.tau_z) - tnx_dot_ty0 * c1;
    const double py_n = -x.nrm_rho * s;
    const double ty_t = x.tau_rho * y.tau_rho * c + x.tau_z * y.tau_z;
    const double py_t = -x.tau_rho * s;
    const double ty_p = y.tau_rho * s;
    const double py_p = c;

    const cplx gn = gr * d_n;
    const cplx gt = gr * d_t;
    const cplx gp = gr * d_p;

    v[S] = g;
    v[Kp] = gn;
    v[V_tt] = g * ty_t;
    v[V_tp] = g * py_t;
    v[V_pt] = g * ty_p;
    v[V_pp] = g * py_p;
    v[V_nt] = g * ty_n;
    v[V_np] = g * py_n;
    v[W_tt] = gt * ty_n - gn * ty_t;
    v[W_tp] = gt * py_n - gn * py_t;
    v[W_pt] = gp * ty_n - gn * ty_p;
    v[W_pp] = gp * py_n - gn * py_p;

    for (std::size_t m = 0; m < modes.size(); m++)
    {
      const double a = modes[m] * phi;
      const cplx w = rule.weights[q] * cplx(std::cos(a), std::sin(a));
      for (int comp = 0; comp < n_components; comp++)
      {
        out(static_cast<Eigen::Index>(m), comp) += w * v[comp];
      }
    }
  }
}

}  // namespace

Eigen::MatrixXcd azimuthal_components(const CurvePoint &x, const CurvePoint &y,
                                      const RadialKernel &kernel, const std::vector<int> &modes,
                                      int points)
{
  int max_mode = 0;
  for (int m : modes)
  {
    max_mode = std::max(max_mode, std::abs(m));
  }
  const double width = max_panel_width(std::abs(kernel.k), std::max(x.rho, y.rho), max_mode);
  const AzimuthalRule rule = graded_azimuthal_rule(pair_scale(x, y), width, points);
  Eigen::MatrixXcd out;
  integrate_pair(x, y, kernel, rule, modes, out);
  return out;
}

std::vector<ModalOperators> build_modal_operators(const SurfaceGrid &grid,
                                                  const RadialKernel &kernel,
                                                  const std::vector<int> &modes,
                                                  ComponentMask mask, const TableConfig &cfg)
{
  const int n = grid.n_nodes;
  const AlpertRule &alpert = alpert_rule(cfg.order);
  if (n < 4 * alpert.skip)
  {
    throw ConfigError("grid too small for the requested quadrature order");
  }
  const double h = grid.h();

  double rho_max = 0.0;
  int max_mode = 0;
  for (const CurvePoint &p : grid.nodes)
  {
    rho_max = std::max(rho_max, p.rho);
  }
  for (int m : modes)
  {
    max_mode = std::max(max_mode, std::abs(m));
  }
  const RuleCache rules(max_panel_width(std::abs(kernel.k), rho_max, max_mode),
                        cfg.azimuthal_points);

  std::vector<ModalOperators> result(modes.size());
  for (std::size_t m = 0; m < modes.size(); m++)
  {
    result[m].mode = modes[m];
    result[m].kernel = kernel;
    result[m].mask = mask;
    for (int c = 0; c < n_components; c++)
    {
      if (mask & (1u << c))
      {
        result[m].op[c] = CMatrix::Zero(n, n);
      }
    }
  }

  // Auxiliary nodes: curve data and interpolation weights relative to the target node.
  const int n_aux = 2 * static_cast<int>(alpert.nodes.size());
  std::vector<double> aux_offset(n_aux), aux_weight(n_aux);
  std::vector<Eigen::VectorXd> aux_interp(n_aux);
  for (int a = 0; a < n_aux; a++)
  {
    const int k = a / 2;
    const double sgn = (a % 2 == 0) ? 1.0 : -1.0;
    aux_offset[a] = sgn * alpert.nodes[k] * h;
    aux_weight[a] = alpert.weights[k] * h;
    aux_interp[a] = periodic_interp_weights(n, aux_offset[a]);
  }

  std::vector<int> rows = cfg.rows;
  if (rows.empty())
  {
    for (int i = 0; i < n; i++)
    {
      rows.push_back(i);
    }
  }
  const int n_rows = static_cast<int>(rows.size());

#pragma omp parallel for schedule(dynamic, 4) if (cfg.parallel)
  for (int ri = 0; ri < n_rows; ri++)
  {
    const int i = rows[ri];
    const CurvePoint &x = grid.nodes[i];
    Eigen::MatrixXcd vals;
    for (int l = alpert.skip; l <= n - alpert.skip; l++)
    {
      const int j = (i + l) % n;
      const CurvePoint &y = grid.nodes[j];
      integrate_pair(x, y, kernel, rules.for_scale(pair_scale(x, y)), modes, vals);
      const double wj = y.jacobian() * h;
      for (std::size_t m = 0; m < modes.size(); m++)
      {
        for (int c = 0; c < n_components; c++)
        {
          if (mask & (1u << c))
          {
            result[m].op[c](i, j) += wj * vals(static_cast<Eigen::Index>(m), c);
          }
        }
      }
    }
    for (int a = 0; a < n_aux; a++)
    {
      const CurvePoint y = evaluate_curve(grid.curve, x.t + aux_offset[a]);
      integrate_pair(x, y, kernel, rules.for_scale(pair_scale(x, y)), modes, vals);
      const double wa = y.jacobian() * aux_weight[a];
      for (std::size_t m = 0; m < modes.size(); m++)
      {
        for (int c = 0; c < n_components; c++)
        {
          if (!(mask & (1u << c)))
          {
            continue;
          }
          const cplx val = wa * vals(static_cast<Eigen::Index>(m), c);
          CMatrix &op = result[m].op[c];
          for (int j = 0; j < n; j++)
          {
            // Interpolation weight of node j at t_i + offset is that of node j - i at offset.
            op(i, j) += val * aux_interp[a][(j - i + n) % n];
          }
        }
      }
    }
  }
  return result;
}

CMatrix build_modal_table(Component c, int mode, Wavenumber k, const SurfaceGrid &grid,
                          const TableConfig &cfg)
{
  const int n = grid.n_nodes;
  const RadialKernel kernel{RadialKernel::Kind::helmholtz, k.value()};
  double rho_max = 0.0;
  for (const CurvePoint &p : grid.nodes)
  {
    rho_max = std::max(rho_max, p.rho);
  }
  const RuleCache rules(max_panel_width(std::abs(k.value()), rho_max, std::abs(mode)),
                        cfg.azimuthal_points);
  const std::vector<int> modes{mode};
  CMatrix table = CMatrix::Zero(n, n);
  std::vector<int> rows = cfg.rows;
  if (rows.empty())
  {
    for (int i = 0; i < n; i++)
    {
      rows.push_back(i);
    }
  }
  const int n_rows = static_cast<int>(rows.size());
#pragma omp parallel for schedule(dynamic, 4) if (cfg.parallel)
  for (int ri = 0; ri < n_rows; ri++)
  {
    const int i = rows[ri];
    Eigen::MatrixXcd vals;
    for (int j = 0; j < n; j++)
    {
      if (j == i)
      {
        continue;
      }
      const CurvePoint &x = grid.nodes[i], &y = grid.nodes[j];
      integrate_pair(x, y, kernel, rules.for_scale(pair_scale(x, y)), modes, vals);
      table(i, j) = vals(0, c) * y.rho;
    }
  }
  return table;
}

}  // namespace debye
