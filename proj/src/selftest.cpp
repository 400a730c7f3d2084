// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <random>

#include "debye/errors.hpp"
#include "debye/experiments.hpp"
#include "debye/quadrature.hpp"

namespace debye
{

namespace
{

constexpr double pi = std::numbers::pi;
constexpr cplx I(0.0, 1.0);

class Report
{
public:
  void add(const std::string &module, const std::string &id, double measured, double threshold)
  {
    results.push_back({module, id, measured, threshold, std::isfinite(measured) &&
                                                          measured <= threshold});
  }
  // A thrown exception is a failed check, not an aborted self test.
  template <typename F> void run(const std::string &module, const std::string &id, double threshold, F &&f)
  {
    try
    {
      add(module, id, f(), threshold);
    }
    catch (const std::exception &)
    {
      add(module, id, std::numeric_limits<double>::infinity(), threshold);
    }
  }
  std::vector<CheckResult> results;
};

CVector band_limited(const SurfaceGrid &g, std::uint64_t seed, int band)
{
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  CVector f = CVector::Zero(g.n_nodes);
  for (int m = -band; m <= band; m++)
  {
    const cplx c(nd(rng), nd(rng));
    for (int i = 0; i < g.n_nodes; i++)
    {
      f[i] += c * std::exp(I * (m * g.t(i))) / (1.0 + m * m);
    }
  }
  return f;
}

double max_abs(const CVector &v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

std::vector<CheckResult> selftest(int nodes)
{
  Report rep;
  const SurfaceGrid grid = build_surface_grid(FourierCurve::reference_torus(), nodes);
  const int n = grid.n_nodes;

  rep.run("geometry", "area_positive", 0.0, [&] { return grid.area() > 0.0 ? 0.0 : 1.0; });
  rep.run("geometry", "period_matrix_condition", 100.0,
          [&]
          {
            const HarmonicBasis hb = harmonic_basis(grid);
            const int b = build_cycles(grid, 8, 16).b_index;
            Eigen::Matrix2cd p;
            p << circulation_a(grid, hb.psi_tau), circulation_b(grid, b, hb.psi_tau),
              circulation_a(grid, hb.psi_theta), circulation_b(grid, b, hb.psi_theta);
            return condition_number(CMatrix(p));
          });

  rep.run("quadrature", "alpert_constant", 1e-13,
          [&]
          {
            const cplx v = alpert_integrate(CVector::Ones(n), 0, alpert_rule(16),
                                            [](double) { return cplx(1.0); });
            return std::abs(v - 2.0 * pi);
          });
  rep.run("quadrature", "alpert_log_kernel", 1e-10,
          [&]
          {
            const cplx v = alpert_integrate(
              CVector::Ones(n), 3, alpert_rule(16), [&](double t)
              { return cplx(std::log(std::abs(2.0 * std::sin(0.5 * (t - grid.t(3)))))); });
            return std::abs(v);
          });
  rep.run("quadrature", "azimuthal_orthogonality", 1e-12,
          []
          {
            const AzimuthalIntegrator integ;
            return std::abs(integ.integrate([](double) { return cplx(1.0); }, 3).value);
          });

  for (int mode : {0, 2})
  {
    const std::string tag = "_n" + std::to_string(mode);
    const SurfaceCalculus calc(grid, mode);
    rep.run("surface_calc", "laplace_r0" + tag, 1e-10,
            [&]
            {
              CVector f = band_limited(grid, 11, 6);
              if (mode == 0)
              {
                f.array() -= (calc.mean_row().cast<cplx>() * f)(0);
              }
              return max_abs(calc.lap() * (calc.r0() * f) - f) / max_abs(f);
            });
  }
  rep.run("surface_calc", "harmonic_closed_coclosed", 1e-10,
          [&]
          {
            const SurfaceCalculus calc(grid, 0);
            const HarmonicBasis hb = harmonic_basis(grid);
            double e = 0.0;
            for (const ModalTangentField *psi : {&hb.psi_tau, &hb.psi_theta})
            {
              e = std::max(e, max_abs(calc.dstar_gamma(*psi).values));
              e = std::max(e, max_abs(calc.curl_gamma(*psi).values));
            }
            return e;
          });

  rep.run("kernels", "difference_kernel_static_limit", 1e-12,
          []
          {
            const Vec3 x(1.0, 0.0, 0.0), y(0.0, 0.0, 0.0);
            const cplx v = green_diff_over_k(x, y, 1e-14);
            return std::abs(v - I / (4.0 * pi)) / std::abs(I / (4.0 * pi));
          });

  // Exact jumps of the discrete traces: m, -j, r, q.
  for (cplx k : {cplx(0.0), cplx(2.0, 0.1)})
  {
    rep.run("boundary_ops", "trace_jumps_k" + std::to_string(k.real()), 1e-12,
            [&]
            {
              auto calc = std::make_shared<const SurfaceCalculus>(grid, 1);
              const OperatorSet ops = assemble_operators(calc, k);
              ModalSources s{1, band_limited(grid, 1, 5), band_limited(grid, 2, 5),
                             CVector(2 * n), CVector(2 * n)};
              s.j << band_limited(grid, 3, 5), band_limited(grid, 4, 5);
              s.m << band_limited(grid, 5, 5), band_limited(grid, 6, 5);
              const TraceResult te = traces(s, ops, Side::exterior);
              const TraceResult ti = traces(s, ops, Side::interior);
              double e = max_abs(te.t_xi - ti.t_xi - s.m);
              e = std::max(e, max_abs(te.t_eta - ti.t_eta + s.j));
              e = std::max(e, max_abs(te.n_xi - ti.n_xi - s.r));
              e = std::max(e, max_abs(te.n_eta - ti.n_eta - s.q));
              return e;
            });
  }

  // The gauge and Maxwell checks use a circular torus: div_Gamma grad_Gamma matches the Laplacian only to the
  // discretization error, which is slow on the narrow-strip default torus.
  const FourierCurve circle{{2.0, 0.5}, {0.0, 0.0}, {0.0}, {0.0, 0.5}};
  const SurfaceGrid cg = build_surface_grid(circle, n);
  rep.run("debye", "gauge_conditions", 1e-10,
          [&]
          {
            const SurfaceCalculus calc(cg, 0);
            const cplx k(1.5, 0.0);
            DebyeSourceSet s;
            s.mode = 0;
            s.r = band_limited(cg, 7, 3);
            s.q = band_limited(cg, 8, 3);
            s.r.array() -= (calc.mean_row().cast<cplx>() * s.r)(0);
            s.q.array() -= (calc.mean_row().cast<cplx>() * s.q)(0);
            s.a << 1.0, -0.5;
            const ModalSources src = pec_sources(s, calc, k);
            const double e1 = max_abs(calc.ds() * src.j - I * k * src.r);
            const double e2 = max_abs(calc.ds() * src.m - I * k * src.q);
            return std::max(e1, e2) / std::abs(k) / std::max(max_abs(s.r), max_abs(s.q));
          });
  rep.run("debye", "parameter_guard", 0.0,
          []
          {
            try
            {
              material_params(1.0, -1.0, 1.0, 1.0, 1.0);
            }
            catch (const ParameterError &)
            {
              return 0.0;
            }
            return 1.0;
          });

  const MaterialParams reference = material_params(0.90, 1.10, 1.30, 0.83, 1.0);
  rep.run("solver", "zero_data_zero_solution", 0.0,
          [&]
          {
            ModalSystem sys = assemble_dielectric(grid, 0, reference, ClutchingMap{0.0},
                                                  BoundaryData::zero(0, n));
            solve(sys);
            return sys.solution.norm();
          });
  rep.run("solver", "manufactured_dielectric_n0", 1e-4,
          [&]
          {
            ExperimentConfig cfg;
            cfg.nodes = nodes;
            cfg.omegas = {1.0};
            cfg.probes = 6;
            cfg.aux_nodes = 96;
            const AccuracyRow r = run_manufactured(cfg).front();
            return std::max(r.err_exterior, r.err_interior);
          });
  rep.run("solver", "pec_low_frequency_residual", 1e-10,
          [&]
          {
            ExperimentConfig cfg;
            cfg.nodes = nodes;
            cfg.omegas = {1e-8};
            cfg.probes = 4;
            cfg.aux_nodes = 96;
            return run_pec(cfg).front().residual;
          });

  rep.run("fields", "maxwell_residual", 1e-8,
          [&]
          {
            const SurfaceCalculus calc(cg, 1);
            const cplx k = reference.k1;
            DebyeSourceSet s;
            s.mode = 1;
            s.r = band_limited(cg, 9, 4);
            s.q = band_limited(cg, 10, 4);
            const ModalSources src = pec_sources(s, calc, k);
            const FieldEvaluator fe(cg);
            const MediumScale sc{reference.sqrt_eps1, reference.sqrt_mu1};
            const FieldFunction f = [&](const Vec3 &x)
            {
              const EMFieldSample v = fe.evaluate(x, {src}, k, sc);
              return std::make_pair(v.xi, v.eta_star);
            };
            return maxwell_residual(Vec3(2.1, 1.3, 1.2), f, reference.omega, reference.eps1, reference.mu1,
                                    4e-3, 1.0);
          });
  rep.run("fields", "linearity", 1e-14,
          [&]
          {
            ModalSources a{0, band_limited(grid, 12, 3), band_limited(grid, 13, 3),
                           CVector::Zero(2 * n), CVector::Zero(2 * n)};
            ModalSources b = a;
            b.r *= 2.0;
            b.q *= 2.0;
            const FieldEvaluator fe(grid);
            const Vec3 x(3.0, 2.0, 4.5);
            const EMFieldSample fa = fe.evaluate(x, {a}, 0.7, {}), fb = fe.evaluate(x, {b}, 0.7, {});
            return (fb.xi - 2.0 * fa.xi).norm() / fb.xi.norm();
          });
  rep.run("fields", "near_evaluation_rejected", 0.0,
          [&]
          {
            const FieldEvaluator fe(grid);
            try
            {
              fe.evaluate(grid.nodes[0].position(0.0), {ModalSources::zero(0, n)}, 1.0, {});
            }
            catch (const NearEvaluationError &)
            {
              return 0.0;
            }
            return 1.0;
          });
  return rep.results;
}

}  // namespace debye
