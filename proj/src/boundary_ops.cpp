// SPDX-License-Identifier: Apache-2.0

#include "debye/boundary_ops.hpp"

namespace debye
{

namespace
{

CVector star(const CVector &v)
{
  const Eigen::Index n = v.size() / 2;
  CVector w(v.size());
  w.head(n) = -v.tail(n);
  w.tail(n) = v.head(n);
  return w;
}

CMatrix star_rows(const CMatrix &a)
{
  const Eigen::Index n = a.rows() / 2;
  CMatrix b(a.rows(), a.cols());
  b.topRows(n) = -a.bottomRows(n);
  b.bottomRows(n) = a.topRows(n);
  return b;
}

CMatrix block2(const CMatrix &tt, const CMatrix &tp, const CMatrix &pt, const CMatrix &pp)
{
  const Eigen::Index n = tt.rows();
  CMatrix m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = tt;
  m.topRightCorner(n, n) = tp;
  m.bottomLeftCorner(n, n) = pt;
  m.bottomRightCorner(n, n) = pp;
  return m;
}

}  // namespace

OperatorSet::OperatorSet(std::shared_ptr<const SurfaceCalculus> calc,
                         const ModalOperators &tables)
  : calc_(std::move(calc)), k_(tables.kernel.k)
{
  const Eigen::Index n = calc_->size();
  s_ = tables[S];
  kp_ = tables[Kp];
  vt_ = block2(tables[V_tt], tables[V_tp], tables[V_pt], tables[V_pp]);
  vn_.resize(n, 2 * n);
  vn_ << tables[V_nt], tables[V_np];
  w_ = block2(tables[W_tt], tables[W_tp], tables[W_pt], tables[W_pp]);
}

CMatrix OperatorSet::k1() const { return star_rows(calc_->dg() * s_); }

CMatrix OperatorSet::k2t() const { return star_rows(vt_); }

CMatrix OperatorSet::k3() const { return -(calc_->ds() * star_rows(vt_)); }

CMatrix OperatorSet::div_grad_single_layer() const { return -(calc_->lap() * s_); }

OperatorSet assemble_operators(std::shared_ptr<const SurfaceCalculus> calc, Wavenumber k,
                               const TableConfig &cfg)
{
  const RadialKernel kernel{RadialKernel::Kind::helmholtz, k.value()};
  auto tables =
    build_modal_operators(calc->grid(), kernel, {calc->mode()}, all_components, cfg);
  return OperatorSet(std::move(calc), tables[0]);
}

ModalSources ModalSources::zero(int mode, int n_nodes)
{
  return {mode, CVector::Zero(n_nodes), CVector::Zero(n_nodes), CVector::Zero(2 * n_nodes),
          CVector::Zero(2 * n_nodes)};
}

TangentialFields tangential_fields(const ModalSources &src, const OperatorSet &ops, Side side)
{
  const double sg = side == Side::exterior ? 1.0 : -1.0;
  const cplx ik = cplx(0.0, 1.0) * ops.k();
  const CMatrix &dg = ops.calc().dg();
  TangentialFields f;
  f.e_t = ik * (ops.vt() * src.j) - dg * (ops.single_layer() * src.r) + (0.5 * sg) * star(src.m) +
          star(ops.k4() * src.m);
  f.h_t = ik * (ops.vt() * src.m) - dg * (ops.single_layer() * src.q) - (0.5 * sg) * star(src.j) -
          star(ops.k4() * src.j);
  return f;
}

TraceResult traces(const ModalSources &src, const OperatorSet &ops, Side side)
{
  const double sg = side == Side::exterior ? 1.0 : -1.0;
  const cplx ik = cplx(0.0, 1.0) * ops.k();
  const TangentialFields tf = tangential_fields(src, ops, side);
  const CMatrix &ds = ops.calc().ds();
  TraceResult t;
  t.t_xi = -star(tf.e_t);
  t.t_eta = -star(tf.h_t);
  t.n_xi = ik * (ops.vn() * src.j) + (0.5 * sg) * src.r - ops.k0() * src.r +
           ds * star(ops.vt() * src.m);
  t.n_eta = ik * (ops.vn() * src.m) + (0.5 * sg) * src.q - ops.k0() * src.q -
            ds * star(ops.vt() * src.j);
  return t;
}

}  // namespace debye
