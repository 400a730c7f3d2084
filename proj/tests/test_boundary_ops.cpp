// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace testing;

namespace
{
const SurfaceGrid &grid()
{
  static const SurfaceGrid g = build_surface_grid(FourierCurve::reference_torus(), 80);
  return g;
}

ModalSources random_sources(const SurfaceGrid &g, int mode, std::uint64_t seed)
{
  const int n = g.n_nodes;
  ModalSources s{mode, band_limited(g, seed, 5), band_limited(g, seed + 1, 5), CVector(2 * n),
                 CVector(2 * n)};
  s.j << band_limited(g, seed + 2, 5), band_limited(g, seed + 3, 5);
  s.m << band_limited(g, seed + 4, 5), band_limited(g, seed + 5, 5);
  return s;
}
}  // namespace

TEST_CASE("discrete traces jump by the sources")
{
  for (cplx k : {cplx(0.0), cplx(0.5), cplx(2.0, 0.1)})
  {
    for (int mode : {0, 2})
    {
      CAPTURE(k);
      CAPTURE(mode);
      auto calc = std::make_shared<const SurfaceCalculus>(grid(), mode);
      const OperatorSet ops = assemble_operators(calc, k);
      const ModalSources s = random_sources(grid(), mode, 40 + mode);
      const TraceResult te = traces(s, ops, Side::exterior), ti = traces(s, ops, Side::interior);
      CHECK(max_abs(te.t_xi - ti.t_xi - s.m) < 1e-12);
      CHECK(max_abs(te.t_eta - ti.t_eta + s.j) < 1e-12);
      CHECK(max_abs(te.n_xi - ti.n_xi - s.r) < 1e-12);
      CHECK(max_abs(te.n_eta - ti.n_eta - s.q) < 1e-12);
      // t = E_t x n = -star2 E_t, so E_t = star2 t.
      const TangentialFields f = tangential_fields(s, ops, Side::exterior);
      const CMatrix star = SurfaceCalculus::star2_matrix(grid().n_nodes);
      CHECK(max_abs(f.e_t - star * te.t_xi) < 1e-12);
      CHECK(max_abs(f.h_t - star * te.t_eta) < 1e-12);
    }
  }
}

TEST_CASE("Gauss law for the adjoint double layer")
{
  // int_Gamma K'[1] dA = -area / 2 at k = 0, up to the discretization error at N = 80.
  auto calc = std::make_shared<const SurfaceCalculus>(grid(), 0);
  const OperatorSet ops = assemble_operators(calc, 0.0);
  const CVector flux = ops.k0() * CVector::Ones(grid().n_nodes);
  const cplx total = (grid().area_weights().cast<cplx>().transpose() * flux)(0);
  CHECK(std::abs(total + 0.5 * grid().area()) < 1e-6 * grid().area());
}

TEST_CASE("serial and parallel tables agree exactly")
{
  TableConfig par, ser;
  ser.parallel = false;
  for (Component c : {Component(0), Component(1)})
  {
    const CMatrix a = build_modal_table(c, 1, cplx(1.2, 0.1), grid(), par);
    const CMatrix b = build_modal_table(c, 1, cplx(1.2, 0.1), grid(), ser);
    CHECK((a - b).norm() == 0.0);
  }
}

TEST_CASE("row-restricted tables")
{
  TableConfig all, some;
  some.rows = {3, 17};
  const CMatrix a = build_modal_table(Component(0), 2, 0.7, grid(), all);
  const CMatrix b = build_modal_table(Component(0), 2, 0.7, grid(), some);
  CHECK((a.row(3) - b.row(3)).norm() == 0.0);
  CHECK((a.row(17) - b.row(17)).norm() == 0.0);
  CHECK(b.row(4).norm() == 0.0);
}

TEST_CASE("order 8 and 16 tables agree to the order 8 accuracy")
{
  TableConfig o8;
  o8.order = 8;
  auto calc = std::make_shared<const SurfaceCalculus>(grid(), 1);
  const OperatorSet a = assemble_operators(calc, 1.0), b = assemble_operators(calc, 1.0, o8);
  const CVector f = band_limited(grid(), 9, 3);
  const CVector sa = a.single_layer() * f, sb = b.single_layer() * f;
  CHECK(max_abs(sa - sb) / max_abs(sa) < 1e-4);
  CHECK(max_abs(sa - sb) > 0.0);
}

TEST_CASE("operators depend on k continuously at k = 0")
{
  auto calc = std::make_shared<const SurfaceCalculus>(grid(), 0);
  const OperatorSet a = assemble_operators(calc, 0.0), b = assemble_operators(calc, 1e-7);
  CHECK((a.single_layer() - b.single_layer()).norm() / a.single_layer().norm() < 1e-6);
  CHECK((a.k0() - b.k0()).norm() / a.k0().norm() < 1e-6);
}

TEST_CASE("single layer decays for imaginary wavenumbers")
{
  // L2(Gamma) norms: conjugate by the square root of the area weights.
  const Eigen::VectorXd w = grid().area_weights().cwiseSqrt();
  auto norm = [&](cplx k)
  {
    auto calc = std::make_shared<const SurfaceCalculus>(grid(), 0);
    const CMatrix s = assemble_operators(calc, k).single_layer();
    const CMatrix a = w.cast<cplx>().asDiagonal() * s * w.cwiseInverse().cast<cplx>().asDiagonal();
    return Eigen::JacobiSVD<CMatrix>(a).singularValues()(0);
  };
  CHECK(norm(cplx(0.0, 3.0)) < norm(0.0));
}
