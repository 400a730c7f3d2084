// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "debye/errors.hpp"
#include "support.hpp"

using namespace testing;

namespace
{
void write_file(const std::string &path, const std::string &text)
{
  std::ofstream(path) << text;
}

std::vector<std::string> read_lines(const std::string &path)
{
  std::ifstream in(path);
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);)
  {
    lines.push_back(l);
  }
  return lines;
}

ExperimentConfig small_circle(const std::string &geometry_path)
{
  write_geometry(geometry_path, GeometryFile{circular_torus(), 40});
  ExperimentConfig c;
  c.geometry = geometry_path;
  c.probes = 5;
  c.aux_nodes = 64;
  return c;
}
}  // namespace

TEST_CASE("config loading")
{
  write_file("cfg_ok.json", R"({"geometry": "g.json", "nodes": 64, "modes": [0, 2],
    "omegas": [1e-4, 1.0], "eps0": [2.0, 0.5], "mu1": 0.9, "order": 8, "seed": 7})");
  const ExperimentConfig c = load_config("cfg_ok.json");
  CHECK(c.nodes == 64);
  CHECK(c.modes == std::vector<int>{0, 2});
  CHECK(c.omegas.size() == 2);
  CHECK(c.eps0 == cplx(2.0, 0.5));
  CHECK(c.mu1 == cplx(0.9));
  CHECK(c.mu0 == cplx(1.10));
  CHECK(c.order == 8);
  CHECK(c.seed == 7u);
  CHECK(c.geometry == "g.json");

  write_file("cfg_bad.json", R"({"nodes": 64, "omega": 1.0})");
  CHECK_THROWS_AS(load_config("cfg_bad.json"), ConfigError);
  write_file("cfg_bad.json", R"({"nodes": "many"})");
  CHECK_THROWS_AS(load_config("cfg_bad.json"), ConfigError);
  write_file("cfg_bad.json", "[1, 2]");
  CHECK_THROWS_AS(load_config("cfg_bad.json"), ConfigError);
  CHECK_THROWS_AS(load_config("no_such_config.json"), ConfigError);
  std::remove("cfg_ok.json");
  std::remove("cfg_bad.json");
}

TEST_CASE("config hash")
{
  ExperimentConfig a, b;
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a).size() == 16);
  b.omegas = {1.0, 2.0};
  CHECK(config_hash(a) != config_hash(b));
  b = a;
  b.seed += 1;
  CHECK(config_hash(a) != config_hash(b));
  // The output path is not part of the experiment.
  b = a;
  b.out = "elsewhere.csv";
  CHECK(config_hash(a) == config_hash(b));
  CHECK_THROWS_AS(solver_config([] { ExperimentConfig c; c.order = 12; return c; }()), ConfigError);
}

TEST_CASE("CSV layout")
{
  ExperimentConfig c;
  c.experiment = "unit";
  {
    CsvWriter w("unit.csv", {"a", "b_re", "b_im"}, c);
    std::vector<std::string> row{CsvWriter::num(3)};
    for (const std::string &s : CsvWriter::complex(cplx(0.1, -2.0)))
    {
      row.push_back(s);
    }
    w.row(row);
    CHECK_THROWS_AS(w.row({"1"}), ConfigError);
  }
  const std::vector<std::string> lines = read_lines("unit.csv");
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "a,b_re,b_im");
  CHECK(lines[1] == "# experiment=unit config_hash=" + config_hash(c) + " seed=20240917");
  CHECK(lines[2] == "3,0.10000000000000001,-2");
  CHECK(std::stod(CsvWriter::num(0.1)) == 0.1);
  std::remove("unit.csv");
}

TEST_CASE("inside test and probe placement")
{
  const FourierCurve c = FourierCurve::reference_torus();
  CHECK(inside_torus(c, Vec3(2.0, 0.0, 2.0)));
  CHECK(inside_torus(c, Vec3(0.0, -2.0, 2.3)));
  CHECK_FALSE(inside_torus(c, Vec3(0.0, 0.0, 2.0)));
  CHECK_FALSE(inside_torus(c, Vec3(2.0, 0.0, 4.0)));
  const ProbeSet p = make_probes(c, 20, 11);
  CHECK(p.exterior.size() == 20);
  CHECK(p.interior.size() == 20);
  const SurfaceGrid g = build_surface_grid(c, 100);
  const FieldEvaluator fe(g);
  for (const Vec3 &x : p.exterior)
  {
    CHECK_FALSE(inside_torus(c, x));
    CHECK(fe.distance_to_surface(x) >= 0.2 * 2.0 - 1e-9);
  }
  for (const Vec3 &x : p.interior)
  {
    CHECK(inside_torus(c, x));
    CHECK(fe.distance_to_surface(x) >= 0.05 * 2.0 - 1e-9);
  }
  // Seeded: the same seed gives the same points.
  CHECK(make_probes(c, 20, 11).exterior[7] == p.exterior[7]);
  CHECK(make_probes(c, 20, 12).exterior[7] != p.exterior[7]);
}

TEST_CASE("manufactured fields solve Maxwell's equations in their media")
{
  const MaterialParams &pp = reference_params();
  const ManufacturedProblem mp(circular_torus(), 1, pp, 3, 64);
  const FieldFunction ext = [&](const Vec3 &x)
  {
    const FieldPair f = mp.exterior_field(x);
    return std::make_pair(f.e, f.h);
  };
  const FieldFunction in = [&](const Vec3 &x)
  {
    const FieldPair f = mp.interior_field(x);
    return std::make_pair(f.e, f.h);
  };
  CHECK(maxwell_residual(Vec3(2.9, 0.3, 0.6), ext, pp.omega, pp.eps1, pp.mu1, 4e-3, 1.0) < 1e-8);
  CHECK(maxwell_residual(Vec3(1.9, 0.3, 0.1), in, pp.omega, pp.eps0, pp.mu0, 4e-3, 1.0) < 1e-8);
}

TEST_CASE("zero manufactured data")
{
  ExperimentConfig c = small_circle("harness_zero.json");
  c.amplitude = 0.0;
  const auto [sol, row] = solve_manufactured_dielectric(c);
  CHECK(pack_dielectric(sol).norm() == 0.0);
  CHECK(row.err_exterior == 0.0);
  CHECK(row.err_interior == 0.0);
  std::remove("harness_zero.json");
}

TEST_CASE("runs are deterministic")
{
  ExperimentConfig c = small_circle("harness_det.json");
  c.omegas = {0.5, 1.0};
  c.modes = {0, 1};
  const std::vector<AccuracyRow> a = run_manufactured(c), b = run_manufactured(c);
  REQUIRE(a.size() == 4);
  for (std::size_t i = 0; i < a.size(); i++)
  {
    CHECK(a[i].err_exterior == b[i].err_exterior);
    CHECK(a[i].condition == b[i].condition);
  }
  CHECK(a[0].mode == 0);
  CHECK(a[1].omega == 1.0);
  std::remove("harness_det.json");
}

TEST_CASE("condition sweeps")
{
  ExperimentConfig c = small_circle("harness_sweep.json");
  c.omegas = {1e-4, 1.0};
  c.tc_list = {1.5707963267948966, 0.0};
  const std::vector<ConditionCell> cells = run_clutch_sweep(c);
  REQUIRE(cells.size() == 4);
  CHECK(cells[0].tc == 0.0);  // sorted by tc
  for (const ConditionCell &x : cells)
  {
    CHECK(std::isfinite(x.condition));
    CHECK(x.condition >= 1.0);
    CHECK_FALSE(x.flagged);
  }
  c.tc = 0.0;
  const std::vector<ConditionCell> r = run_resonance_scan(c);
  CHECK(r.size() == 2);
  CHECK(r[0].condition == cells[0].condition);
  const std::vector<PecRow> pec = run_pec(c);
  CHECK(pec.size() == 2);
  CHECK(pec[0].residual < 1e-12);
  std::remove("harness_sweep.json");
}

TEST_CASE("selftest passes")
{
  for (const CheckResult &r : selftest(100))
  {
    CAPTURE(r.module);
    CAPTURE(r.id);
    CAPTURE(r.measured);
    CHECK(r.passed);
  }
}
