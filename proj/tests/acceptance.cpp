// SPDX-License-Identifier: Apache-2.0
//
// Acceptance run: one PASS/FAIL line per criterion. Arguments select criteria by number;
// no arguments runs all nine. Exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "debye/errors.hpp"
#include "support.hpp"

using namespace testing;

namespace
{

constexpr double pi = std::numbers::pi;
constexpr cplx I(0.0, 1.0);

struct Outcome
{
  bool passed;
  std::string detail;
};

std::string fmt(const char *f, double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

const SurfaceGrid &reference_grid()
{
  static const SurfaceGrid g = build_surface_grid(FourierCurve::reference_torus(), 200);
  return g;
}

double median(std::vector<double> v)
{
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// 1. Manufactured-solution accuracy, n = 0, N = 200, order 16.
Outcome manufactured_accuracy()
{
  ExperimentConfig cfg;
  cfg.nodes = 200;
  cfg.order = 16;
  cfg.omegas = {1e-6, 1e-4, 1e-2, 1.0};
  const std::vector<AccuracyRow> rows = run_manufactured(cfg);
  bool ok = true;
  std::ostringstream d;
  std::vector<double> err;
  for (const AccuracyRow &r : rows)
  {
    const double e = std::max(r.err_exterior, r.err_interior);
    err.push_back(e);
    ok = ok && e <= 1e-6;
    d << "w=" << r.omega << ":" << fmt("%.2e", e) << " ";
  }
  const bool ordered = err.front() <= err.back();
  d << (ordered ? "err(1e-6)<=err(1)" : "err(1e-6)>err(1)");
  return {ok && ordered, d.str()};
}

// 2. Clutching-map conditioning at n = 0.
Outcome clutch_conditioning()
{
  ExperimentConfig cfg;
  cfg.nodes = 200;
  cfg.omegas = {1e-4, 1e-3, 1e-2, 1e-1, 1.0};
  cfg.tc_list = {0.0, pi / 2};
  const std::vector<ConditionCell> cells = run_clutch_sweep(cfg);
  double c0 = 0.0, c_half = 0.0, lo = 1e300, hi = 0.0;
  for (const ConditionCell &c : cells)
  {
    if (c.tc == 0.0)
    {
      lo = std::min(lo, c.condition);
      hi = std::max(hi, c.condition);
      if (c.omega == 1e-4)
      {
        c0 = c.condition;
      }
    }
    else if (c.omega == 1e-4)
    {
      c_half = c.condition;
    }
  }
  const double ratio = c_half / c0, spread = hi / lo;
  return {ratio >= 100.0 && spread <= 10.0,
          "cond(pi/2,1e-4)/cond(0,1e-4)=" + fmt("%.3g", ratio) + " (>=100), t_c=0 spread " +
            fmt("%.3g", spread) + " (<=10)"};
}

// 3. No spurious resonances over [0.5, 5].
Outcome no_resonances()
{
  ExperimentConfig cfg;
  cfg.nodes = 200;
  cfg.tc = 0.0;
  cfg.omegas.clear();
  for (int i = 0; i < 50; i++)
  {
    cfg.omegas.push_back(0.5 + 4.5 * i / 49.0);
  }
  std::vector<double> c;
  for (const ConditionCell &x : run_resonance_scan(cfg))
  {
    c.push_back(x.condition);
  }
  const double mx = *std::max_element(c.begin(), c.end()), md = median(c);
  return {mx <= 10.0 * md, "max " + fmt("%.4g", mx) + ", median " + fmt("%.4g", md) +
                             ", ratio " + fmt("%.3g", mx / md) + " (<=10)"};
}

// 4. PEC low-frequency stability and the difference kernel.
Outcome pec_low_frequency()
{
  ExperimentConfig cfg;
  cfg.nodes = 200;
  cfg.omegas = {1e-8, 1e-2};
  cfg.probes = 10;
  const std::vector<PecRow> rows = run_pec(cfg);
  const double ratio = rows[0].condition / rows[1].condition;
  bool ok = ratio <= 10.0 && rows[0].residual <= 1e-10;
  // (e^{ik} - 1) / (4 pi k) at r = 1, 50-digit references.
  const std::pair<double, cplx> ref[] = {
    {1e-3, {-0.000039788732457245963385, 0.079577458283036406705}},
    {1e-6, {-3.9788735772970518214e-8, 0.079577471545934404973}},
    {1e-9, {-3.9788735772973833939e-11, 0.079577471545947667871}},
    {1e-12, {-3.9788735772973833942e-14, 0.079577471545947667884}},
  };
  const Vec3 x(0.6, 0.0, 0.8), y(0.0, 0.0, 0.0);
  double kerr = 0.0;
  for (const auto &[k, v] : ref)
  {
    kerr = std::max(kerr, std::abs(green_diff_over_k(x, y, k) - v) / std::abs(v));
  }
  const cplx tiny = green_diff_over_k(x, y, 1e-14);
  const double lead = std::abs(tiny - I / (4 * pi)) / std::abs(I / (4 * pi));
  ok = ok && kerr <= 1e-12 && std::isfinite(tiny.real()) && lead <= 1e-12;
  return {ok, "cond(1e-8)/cond(1e-2)=" + fmt("%.4g", ratio) + " (<=10), residual " +
                fmt("%.1e", rows[0].residual) + ", kernel rel err " + fmt("%.1e", kerr) +
                " (<=1e-12), k=1e-14 lead err " + fmt("%.1e", lead)};
}

// 5. Trace identities against off-surface extrapolation. The ladder is
// d = 1e-2, 5e-3, 2.5e-3, 1.25e-3 with cubic extrapolation to d = 0.
Outcome jump_suite()
{
  const SurfaceGrid &g = reference_grid();
  const int n = g.n_nodes;
  FieldConfig fc;
  fc.h_min = 1e-4;
  const FieldEvaluator fe(g, fc);
  const std::vector<double> ladder{1e-2, 5e-3, 2.5e-3, 1.25e-3};
  std::vector<double> weight(ladder.size(), 1.0);
  for (std::size_t j = 0; j < ladder.size(); j++)
  {
    for (std::size_t m = 0; m < ladder.size(); m++)
    {
      if (m != j)
      {
        weight[j] *= ladder[m] / (ladder[m] - ladder[j]);
      }
    }
  }
  const int targets[] = {n / 24, n * 37 / 120, n / 2 + 3, n * 2 / 3, n - 11};
  double worst = 0.0;
  std::ostringstream d;
  for (cplx k : {cplx(0.0), cplx(0.5), cplx(2.0, 0.1)})
  {
    for (int mode : {0, 2})
    {
      auto calc = std::make_shared<const SurfaceCalculus>(g, mode);
      const OperatorSet ops = assemble_operators(calc, k);
      ModalSources s{mode, band_limited(g, 100 + mode, 5), band_limited(g, 101 + mode, 5),
                     CVector(2 * n), CVector(2 * n)};
      s.j << band_limited(g, 102 + mode, 5), band_limited(g, 103 + mode, 5);
      s.m << band_limited(g, 104 + mode, 5), band_limited(g, 105 + mode, 5);
      // identity index: 0 E_t, 1 H_t, 2 E_n, 3 H_n; per side
      double err[2][4] = {}, scale[2][4] = {};
      for (Side side : {Side::exterior, Side::interior})
      {
        const int si = side == Side::exterior ? 0 : 1;
        const double sg = si == 0 ? 1.0 : -1.0;
        const TangentialFields tf = tangential_fields(s, ops, side);
        const TraceResult tr = traces(s, ops, side);
        for (int i : targets)
        {
          const CurvePoint &p = g.nodes[i];
          const Vec3 x = p.position(0.0), nv = p.normal(0.0);
          CVec3 e = CVec3::Zero(), h = CVec3::Zero();
          for (std::size_t l = 0; l < ladder.size(); l++)
          {
            const EMFieldSample f = fe.evaluate(x + sg * ladder[l] * nv, {s}, k, {});
            e += weight[l] * f.xi;
            h += weight[l] * f.eta_star;
          }
          auto comp = [](const Vec3 &v, const CVec3 &f) { return v.cast<cplx>().dot(f); };
          const cplx got[4][2] = {{comp(p.tau(0.0), e), comp(p.theta(0.0), e)},
                                  {comp(p.tau(0.0), h), comp(p.theta(0.0), h)},
                                  {comp(nv, e), 0.0},
                                  {comp(nv, h), 0.0}};
          const cplx want[4][2] = {{tf.e_t[i], tf.e_t[n + i]},
                                   {tf.h_t[i], tf.h_t[n + i]},
                                   {tr.n_xi[i], 0.0},
                                   {tr.n_eta[i], 0.0}};
          for (int id = 0; id < 4; id++)
          {
            for (int c = 0; c < 2; c++)
            {
              err[si][id] = std::max(err[si][id], std::abs(got[id][c] - want[id][c]));
              scale[si][id] = std::max(scale[si][id], std::abs(want[id][c]));
            }
          }
        }
      }
      for (int si = 0; si < 2; si++)
      {
        for (int id = 0; id < 4; id++)
        {
          worst = std::max(worst, err[si][id] / scale[si][id]);
        }
      }
    }
  }
  d << "8 identities x k in {0, 0.5, 2+0.1i} x n in {0, 2}: max rel err " << fmt("%.2e", worst)
    << " (<=1e-5)";
  return {worst <= 1e-5, d.str()};
}

// 6. Maxwell residual of fields from random band-limited Debye data.
Outcome maxwell_residual_check()
{
  const SurfaceGrid &g = reference_grid();
  const FieldEvaluator fe(g);
  const MaterialParams &p = reference_params();
  const ProbeSet probes = make_probes(g.curve, 4, 99);
  double worst = 0.0;
  for (int mode : {0, 1})
  {
    const SurfaceCalculus calc(g, mode);
    DebyeSourceSet s;
    s.mode = mode;
    s.r1 = mean_free(calc, band_limited(g, 60 + mode, 4));
    s.q1 = mean_free(calc, band_limited(g, 62 + mode, 4));
    s.r0 = mean_free(calc, band_limited(g, 64 + mode, 4));
    s.q0 = mean_free(calc, band_limited(g, 66 + mode, 4));
    if (mode == 0)
    {
      s.aj << 0.4, -0.2;
      s.am << 0.1, 0.3;
    }
    const auto [ext, in] = dielectric_sources(s, calc, p, ClutchingMap{0.0});
    const FieldFunction fo = [&](const Vec3 &x)
    {
      const EMFieldSample v = fe.evaluate(x, {ext}, p.k1, {p.sqrt_eps1, p.sqrt_mu1});
      return std::make_pair(v.xi, v.eta_star);
    };
    const FieldFunction fi = [&](const Vec3 &x)
    {
      const EMFieldSample v = fe.evaluate(x, {in}, p.k0, {p.sqrt_eps0, p.sqrt_mu0});
      return std::make_pair(v.xi, v.eta_star);
    };
    for (const Vec3 &x : probes.exterior)
    {
      worst = std::max(worst, maxwell_residual(x, fo, p.omega, p.eps1, p.mu1, 4e-3, 1.0));
    }
    for (const Vec3 &x : probes.interior)
    {
      worst = std::max(worst, maxwell_residual(x, fi, p.omega, p.eps0, p.mu0, 4e-3, 1.0));
    }
  }
  return {worst <= 1e-8, "max normalized residual " + fmt("%.2e", worst) + " (<=1e-8)"};
}

// 7. Surface calculus exactness on the default torus, N = 200.
Outcome surface_calculus()
{
  const SurfaceGrid &g = reference_grid();
  double lap = 0.0;
  for (int mode : {0, 1, 5})
  {
    const SurfaceCalculus calc(g, mode);
    CVector f = band_limited(g, 70 + mode, 10);
    if (mode == 0)
    {
      f = mean_free(calc, f);
    }
    lap = std::max(lap, max_abs(calc.lap() * (calc.r0() * f) - f) / max_abs(f));
  }
  const SurfaceCalculus calc(g, 0);
  const HarmonicBasis hb = harmonic_basis(g);
  double harm = 0.0;
  for (const ModalTangentField *psi : {&hb.psi_tau, &hb.psi_theta})
  {
    harm = std::max(harm, max_abs(calc.curl_gamma(*psi).values));
    harm = std::max(harm, max_abs(calc.dstar_gamma(*psi).values));
  }
  return {lap <= 1e-10 && harm <= 1e-10,
          "lap R0 - (I - mean): " + fmt("%.2e", lap) + ", harmonic d / d*: " + fmt("%.2e", harm) +
            " (<=1e-10)"};
}

// 8. Observed order of the single-layer self-interaction against N = 800.
Outcome quadrature_order()
{
  auto apply = [](int nodes, int order)
  {
    const SurfaceGrid g = build_surface_grid(FourierCurve::reference_torus(), nodes);
    auto calc = std::make_shared<const SurfaceCalculus>(g, 1);
    TableConfig tc;
    tc.order = order;
    const OperatorSet ops = assemble_operators(calc, 1.0, tc);
    CVector s(nodes);
    for (int i = 0; i < nodes; i++)
    {
      const double t = g.t(i);
      s[i] = 0.3 + std::cos(t) + cplx(0.5, 0.2) * std::sin(2 * t);
    }
    const CVector u = ops.single_layer() * s;
    CVector common(50);  // values at the 50 nodes shared by every grid
    for (int i = 0; i < 50; i++)
    {
      common[i] = u[i * (nodes / 50)];
    }
    return common;
  };
  bool ok = true;
  std::ostringstream d;
  for (int order : {8, 16})
  {
    const CVector ref = apply(800, order);
    std::vector<double> e;
    for (int nodes : {50, 100, 200})
    {
      e.push_back(max_abs(apply(nodes, order) - ref) / max_abs(ref));
    }
    // least-squares slope of log err against log N
    const double slope = std::log2(e[0] / e[2]) / 2.0;
    ok = ok && slope >= order;
    d << "order " << order << ": errs " << fmt("%.2e", e[0]) << "," << fmt("%.2e", e[1]) << ","
      << fmt("%.2e", e[2]) << " observed " << fmt("%.2f", slope) << " (>=" << order << ") ";
  }
  return {ok, d.str()};
}

// 9. Homogeneous systems: an exact zero solution, and roundoff-level data (|b| = eps |A|)
// giving solutions of norm cond * eps.
Outcome zero_data()
{
  const SurfaceGrid &g = reference_grid();
  const int n = g.n_nodes;
  double worst = 0.0, exact = 0.0;
  for (double omega : {0.0, 1e-4, 1.0})
  {
    const MaterialParams p = material_params(0.90, 1.10, 1.30, 0.83, omega);
    for (int mode : {0, 1})
    {
      ModalSystem d = assemble_dielectric(g, mode, p, ClutchingMap{0.0}, BoundaryData::zero(mode, n));
      ModalSystem e = assemble_pec(g, mode, p, BoundaryData::zero(mode, n));
      for (ModalSystem *s : {&d, &e})
      {
        solve(*s);
        exact = std::max(exact, s->solution.norm());
        worst = std::max(worst, condition_number(*s) * std::numeric_limits<double>::epsilon());
      }
    }
  }
  return {exact == 0.0 && worst <= 1e-10,
          "zero-data solution norm " + fmt("%.1e", exact) + ", max cond*eps " + fmt("%.2e", worst) +
            " (<=1e-10)"};
}

}  // namespace

int main(int argc, char **argv)
{
  const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria = {
    {"manufactured-solution accuracy", manufactured_accuracy},
    {"clutching-map conditioning", clutch_conditioning},
    {"no spurious resonances", no_resonances},
    {"PEC low-frequency stability", pec_low_frequency},
    {"jump-relation suite", jump_suite},
    {"Maxwell residual", maxwell_residual_check},
    {"surface-calculus exactness", surface_calculus},
    {"quadrature convergence order", quadrature_order},
    {"zero-data uniqueness", zero_data},
  };
  std::vector<int> selected;
  for (int a = 1; a < argc; a++)
  {
    selected.push_back(std::atoi(argv[a]));
  }
  int failures = 0;
  for (std::size_t c = 0; c < criteria.size(); c++)
  {
    const int id = static_cast<int>(c) + 1;
    if (!selected.empty() && std::find(selected.begin(), selected.end(), id) == selected.end())
    {
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try
    {
      o = criteria[c].second();
    }
    catch (const std::exception &e)
    {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d %s: %s [%.0f s]\n", o.passed ? "PASS" : "FAIL", id,
                criteria[c].first, o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += o.passed ? 0 : 1;
  }
  return failures;
}
