// SPDX-License-Identifier: Apache-2.0

#include "debye/solver.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

#include <Eigen/SVD>

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

// Trace maps of the fields generated by sources given as linear maps of the unknowns.
struct SourceMaps
{
  const CMatrix &r, &q, &j, &m;
};

struct TraceMaps
{
  CMatrix e_t, h_t;    // E_t/sqrt(mu), H_t/sqrt(eps), 2N x U
  CMatrix div_e, div_h;  // their surface divergences with Ds Dg S replaced by L S
  CMatrix e_n, h_n;
};

TraceMaps trace_maps(const OperatorSet &ops, const SourceMaps &s, Side side, bool with_tangent)
{
  const double sg = side == Side::exterior ? 0.5 : -0.5;
  const cplx ik = I * ops.k();
  const SurfaceCalculus &calc = ops.calc();
  const CMatrix vt_j = ops.vt() * s.j, vt_m = ops.vt() * s.m;
  // sg star m + star W m and the H companion, the non-gradient local parts.
  const CMatrix loc_e = star_rows(sg * s.m + ops.k4() * s.m);
  const CMatrix loc_h = star_rows(sg * s.j + ops.k4() * s.j);
  const CMatrix sr = ops.single_layer() * s.r, sq = ops.single_layer() * s.q;
  TraceMaps t;
  t.div_e = calc.ds() * (ik * vt_j + loc_e) - calc.lap() * sr;
  t.div_h = calc.ds() * (ik * vt_m - loc_h) - calc.lap() * sq;
  t.e_n = ik * (ops.vn() * s.j) + sg * s.r - ops.k0() * s.r + calc.ds() * star_rows(vt_m);
  t.h_n = ik * (ops.vn() * s.m) + sg * s.q - ops.k0() * s.q - calc.ds() * star_rows(vt_j);
  if (with_tangent)
  {
    t.e_t = ik * vt_j - calc.dg() * sr + loc_e;
    t.h_t = ik * vt_m - calc.dg() * sq - loc_h;
  }
  return t;
}

double cycle_length_a(const SurfaceGrid &grid)
{
  return circulation_a_row(grid).real().sum();
}

void add_rank_one(CMatrix &a, const SurfaceCalculus &calc, int row, int col)
{
  const int n = calc.size();
  a.block(row, col, n, n) += CVector::Ones(n) * calc.mean_row().cast<cplx>();
}

}  // namespace

CMatrix static_single_layer(const SurfaceGrid &grid, int mode, const TableConfig &cfg)
{
  const RadialKernel kernel{RadialKernel::Kind::helmholtz, 0.0};
  return build_modal_operators(grid, kernel, {mode}, component_bit(S), cfg)[0][S];
}

BoundaryData BoundaryData::zero(int mode, int n_nodes)
{
  BoundaryData d;
  d.mode = mode;
  d.j_in = {mode, CVector::Zero(n_nodes), CVector::Zero(n_nodes)};
  d.m_in = d.j_in;
  d.f = CVector::Zero(n_nodes);
  d.h = CVector::Zero(n_nodes);
  return d;
}

BoundaryData dielectric_data_from_tangential(const SurfaceCalculus &calc,
                                             const ModalTangentField &j_in,
                                             const ModalTangentField &m_in, double omega)
{
  if (omega == 0.0)
  {
    throw ParameterError("f and h must be supplied directly at omega = 0");
  }
  BoundaryData d;
  d.mode = calc.mode();
  d.j_in = j_in;
  d.m_in = m_in;
  d.f = calc.curl_gamma(j_in).values / (I * omega);
  d.h = calc.curl_gamma(m_in).values / (I * omega);
  return d;
}

CMatrix ModalSystem::off_identity() const
{
  CMatrix a = matrix;
  for (const IdentityBlock &b : identity_blocks)
  {
    a.block(b.row, b.col, b.size, b.size).diagonal().array() -= b.coeff;
  }
  return a;
}

DielectricOperators prepare_dielectric(const SurfaceGrid &grid, int mode,
                                       const MaterialParams &p, const SolverConfig &cfg,
                                       const CMatrix *g0)
{
  DielectricOperators d;
  d.calc = std::make_shared<const SurfaceCalculus>(grid, mode);
  d.ops1 = std::make_shared<const OperatorSet>(assemble_operators(d.calc, p.k1, cfg.tables));
  d.ops0 = p.k0 == p.k1
             ? d.ops1
             : std::make_shared<const OperatorSet>(assemble_operators(d.calc, p.k0, cfg.tables));
  if (g0)
  {
    d.g0 = *g0;
  }
  else if (p.k1 == 0.0)
  {
    d.g0 = d.ops1->single_layer();
  }
  else if (p.k0 == 0.0)
  {
    d.g0 = d.ops0->single_layer();
  }
  else
  {
    d.g0 = static_single_layer(grid, mode, cfg.tables);
  }
  return d;
}

ModalSystem assemble_dielectric(const SurfaceGrid &grid, int mode, const MaterialParams &p,
                                const ClutchingMap &clutch, const BoundaryData &data,
                                const SolverConfig &cfg)
{
  return assemble_dielectric(prepare_dielectric(grid, mode, p, cfg), p, clutch, data, cfg);
}

ModalSystem assemble_dielectric(const DielectricOperators &dops, const MaterialParams &p,
                                const ClutchingMap &clutch, const BoundaryData &data,
                                const SolverConfig &cfg)
{
  if (std::abs((p.mu0 + p.mu1) * (p.eps0 + p.eps1)) == 0.0 ||
      std::abs(p.mu0 * p.mu1 * p.eps0 * p.eps1) == 0.0)
  {
    throw ParameterError("dielectric system is not Fredholm for these parameters");
  }
  const SurfaceCalculus *calc = dops.calc.get();
  const SurfaceGrid &grid = calc->grid();
  const int mode = calc->mode();
  if (data.mode != mode)
  {
    throw PreconditionError("boundary data mode does not match the system mode");
  }
  const int n = grid.n_nodes;
  const OperatorSet &ops1 = *dops.ops1, &ops0 = *dops.ops0;
  const CMatrix &g0 = dops.g0;

  const DielectricMaps d = dielectric_maps(*calc, p, clutch);
  const bool aux = mode == 0;
  const TraceMaps t1 = trace_maps(ops1, {d.r1, d.q1, d.j1, d.m1}, Side::exterior, aux);
  const TraceMaps t0 = trace_maps(ops0, {d.r0, d.q0, d.j0, d.m0}, Side::interior, aux);

  ModalSystem sys;
  sys.kind = ProblemKind::dielectric;
  sys.mode = mode;
  sys.n_nodes = n;
  const int u = dielectric_unknowns(n, mode);
  sys.matrix.resize(u, u);
  sys.rhs.resize(u);

  // Tangential rows use the divergence of the E_t and H_t jumps, smoothed by G0; the
  // sign makes the leading part -sqrt(mu1)/4 r1 + sqrt(mu0)/4 r0.
  sys.matrix.middleRows(0, n) = -g0 * (p.sqrt_mu1 * t1.div_e - p.sqrt_mu0 * t0.div_e);
  sys.matrix.middleRows(n, n) = -g0 * (p.sqrt_eps1 * t1.div_h - p.sqrt_eps0 * t0.div_h);
  sys.matrix.middleRows(2 * n, n) =
    p.mu1 * p.sqrt_eps1 * t1.h_n - p.mu0 * p.sqrt_eps0 * t0.h_n;
  sys.matrix.middleRows(3 * n, n) =
    -p.eps1 * p.sqrt_mu1 * t1.e_n + p.eps0 * p.sqrt_mu0 * t0.e_n;
  sys.rhs.segment(0, n) = -g0 * (calc->ds() * data.j_in.stacked());
  sys.rhs.segment(n, n) = -g0 * (calc->ds() * data.m_in.stacked());
  sys.rhs.segment(2 * n, n) = data.f;
  sys.rhs.segment(3 * n, n) = data.h;

  if (aux)
  {
    Eigen::RowVectorXcd ca = circulation_a_row(grid);
    Eigen::RowVectorXcd cb = circulation_b_row(grid, build_cycles(grid, 4, 4).b_index, 0);
    if (cfg.normalize_cycles)
    {
      ca /= cycle_length_a(grid);
      cb /= cb.cwiseAbs().sum();
    }
    const CMatrix je = p.sqrt_mu1 * t1.e_t - p.sqrt_mu0 * t0.e_t;
    const CMatrix jh = p.sqrt_eps1 * t1.h_t - p.sqrt_eps0 * t0.h_t;
    sys.matrix.row(4 * n) = ca * je;
    sys.matrix.row(4 * n + 1) = cb * je;
    sys.matrix.row(4 * n + 2) = ca * jh;
    sys.matrix.row(4 * n + 3) = cb * jh;
    sys.rhs(4 * n) = (ca * data.j_in.stacked())(0);
    sys.rhs(4 * n + 1) = (cb * data.j_in.stacked())(0);
    sys.rhs(4 * n + 2) = (ca * data.m_in.stacked())(0);
    sys.rhs(4 * n + 3) = (cb * data.m_in.stacked())(0);

    // Scalar sources of mode 0 are mean free; pair each mean with a row block where its
    // coefficient is nonzero.
    add_rank_one(sys.matrix, *calc, 0, 0);
    add_rank_one(sys.matrix, *calc, n, n);
    add_rank_one(sys.matrix, *calc, 2 * n, 3 * n);
    add_rank_one(sys.matrix, *calc, 3 * n, 2 * n);
  }

  sys.identity_blocks = {
    {0, 2 * n, n, -p.sqrt_mu1 / 4.0},
    {0, 0, n, p.sqrt_mu0 / 4.0},
    {n, 3 * n, n, -p.sqrt_eps1 / 4.0},
    {n, n, n, p.sqrt_eps0 / 4.0},
    {2 * n, 3 * n, n, p.mu1 * p.sqrt_eps1 / 2.0},
    {2 * n, n, n, p.mu0 * p.sqrt_eps0 / 2.0},
    {3 * n, 2 * n, n, -p.eps1 * p.sqrt_mu1 / 2.0},
    {3 * n, 0, n, -p.eps0 * p.sqrt_mu0 / 2.0},
  };
  return sys;
}

ModalSystem assemble_pec(const SurfaceGrid &grid, int mode, const MaterialParams &p,
                         const BoundaryData &data, const SolverConfig &cfg)
{
  if (data.mode != mode)
  {
    throw PreconditionError("boundary data mode does not match the system mode");
  }
  const int n = grid.n_nodes;
  const cplx k = p.k1;
  auto calc = std::make_shared<const SurfaceCalculus>(grid, mode);
  const OperatorSet ops = assemble_operators(calc, k, cfg.tables);
  const CMatrix g0 =
    k == 0.0 ? ops.single_layer() : static_single_layer(grid, mode, cfg.tables);
  const PecMaps m = pec_maps(*calc, k);
  const bool aux = mode == 0;
  const TraceMaps t = trace_maps(ops, {m.r, m.q, m.j, m.m}, Side::exterior, aux);

  ModalSystem sys;
  sys.kind = ProblemKind::pec;
  sys.mode = mode;
  sys.n_nodes = n;
  const int u = pec_unknowns(n, mode);
  sys.matrix.resize(u, u);
  sys.rhs.resize(u);
  const CVector e_data = data.j_in.stacked() / p.sqrt_mu1;
  sys.matrix.middleRows(0, n) = -g0 * t.div_e;
  sys.matrix.middleRows(n, n) = t.h_n;
  sys.rhs.segment(0, n) = -g0 * (calc->ds() * e_data);
  sys.rhs.segment(n, n) = data.f / p.sqrt_eps1;

  if (aux)
  {
    const int b = build_cycles(grid, 4, 4).b_index;
    Eigen::RowVectorXcd ca = circulation_a_row(grid);
    Eigen::RowVectorXcd cb = circulation_b_row(grid, b, 0);
    if (cfg.normalize_cycles)
    {
      ca /= cycle_length_a(grid);
      cb /= cb.cwiseAbs().sum();
    }
    sys.matrix.row(2 * n) = ca * t.e_t;
    sys.rhs(2 * n) = (ca * e_data)(0);

    // (1/k) times the B circulation of E_t/sqrt(mu), written with j = ik j_nh + j_H so the
    // 1/k cancels analytically; the static harmonic part has zero B circulation and the
    // remainder uses the difference kernel (W_k - W_0)/k.
    CMatrix j_nh = CMatrix::Zero(2 * n, u), j_h = CMatrix::Zero(2 * n, u);
    const CMatrix pm = calc->dg() * calc->r0();
    j_nh.middleCols(0, n) = pm;
    j_nh.middleCols(n, n) = -star_rows(pm);
    j_h.middleCols(2 * n, 2) = harmonic_matrix(grid);
    TableConfig row_cfg = cfg.tables;
    row_cfg.rows = {b};
    const ComponentMask wmask = component_bit(W_tt) | component_bit(W_tp) |
                                component_bit(W_pt) | component_bit(W_pp);
    const RadialKernel diff{RadialKernel::Kind::difference, k};
    const ModalOperators dw_tab = build_modal_operators(grid, diff, {0}, wmask, row_cfg)[0];
    CMatrix dw(2 * n, 2 * n);
    dw << dw_tab[W_tt], dw_tab[W_tp], dw_tab[W_pt], dw_tab[W_pp];
    const CMatrix row_b = I * (ops.vt() * (I * k * j_nh + j_h)) - 0.5 * I * j_nh +
                          star_rows(I * (ops.k4() * star_rows(j_nh)) + dw * star_rows(j_h));
    sys.matrix.row(2 * n + 1) = cb * row_b;
    // Faraday: (1/k) oint_B E/sqrt(mu) = (i/sqrt(eps)) int_disk H . z dA.
    const double scale = cb(n + b).real() / (2.0 * std::numbers::pi * grid.nodes[b].rho);
    sys.rhs(2 * n + 1) = scale * I * data.disk_flux / p.sqrt_eps1;

    add_rank_one(sys.matrix, *calc, 0, 0);
    add_rank_one(sys.matrix, *calc, n, n);
  }
  sys.identity_blocks = {{0, 0, n, -0.25}, {n, n, n, 0.5}};
  return sys;
}

DebyeSourceSet solve(ModalSystem &sys)
{
  const int n = sys.n_nodes;
  const double bnorm = sys.rhs.norm();
  CVector x;
  if (bnorm == 0.0)
  {
    x = CVector::Zero(sys.rhs.size());
  }
  else
  {
    const Eigen::PartialPivLU<CMatrix> lu(sys.matrix);
    const double rc = lu.rcond();
    if (!(rc > 16.0 * std::numeric_limits<double>::epsilon()))
    {
      throw ConditioningError("system matrix is singular to working precision",
                              condition_number(sys));
    }
    x = lu.solve(sys.rhs);
    x += lu.solve(sys.rhs - sys.matrix * x);
    const double res = (sys.matrix * x - sys.rhs).norm() / bnorm;
    if (!(res <= 1e-12))
    {
      throw ConditioningError("solve residual " + std::to_string(res) + " above 1e-12",
                              condition_number(sys));
    }
  }
  sys.solution = x;
  return sys.kind == ProblemKind::dielectric ? unpack_dielectric(sys.mode, n, x)
                                             : unpack_pec(sys.mode, n, x);
}

double condition_number(const CMatrix &a)
{
  const Eigen::BDCSVD<CMatrix> svd(a);
  const auto &s = svd.singularValues();
  if (s.size() == 0)
  {
    return 1.0;
  }
  const double smin = s(s.size() - 1);
  return smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity();
}

double condition_number(ModalSystem &sys)
{
  sys.condition = condition_number(sys.matrix);
  return sys.condition;
}

}  // namespace debye
