// SPDX-License-Identifier: Apache-2.0

#ifndef DEBYE_EXPERIMENTS_HPP
#define DEBYE_EXPERIMENTS_HPP

#include <cstdint>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "debye/fields.hpp"
#include "debye/solver.hpp"

namespace debye
{

struct ExperimentConfig
{
  std::string experiment = "manufactured";
  std::string geometry;  // JSON geometry file; empty selects the built-in reference torus
  int nodes = 0;  // 0: the geometry file's value, or 200 for the built-in torus
  std::vector<int> modes{0};
  std::vector<double> omegas{1.0};
  double tc = 0.0;
  std::vector<double> tc_list{0.0};
  cplx eps0 = 0.90, mu0 = 1.10, eps1 = 1.30, mu1 = 0.83;
  int order = 16;
  int aux_nodes = 128;
  int probes = 20;  // per region
  std::uint64_t seed = 20240917;
  double amplitude = 1.0;  // scale of the manufactured sources (0 gives zero data)
  std::string out;
};

// Reads a JSON object whose keys mirror ExperimentConfig; complex values are either numbers
// or [re, im] pairs. Unknown keys are rejected (ConfigError).
ExperimentConfig load_config(const std::string &path);
std::string config_json(const ExperimentConfig &cfg);
// 64-bit FNV-1a of the canonical JSON, as 16 hex digits.
std::string config_hash(const ExperimentConfig &cfg);

SurfaceGrid experiment_grid(const ExperimentConfig &cfg);
SolverConfig solver_config(const ExperimentConfig &cfg);

// Inside test for the solid torus, done in the meridian half plane.
bool inside_torus(const FourierCurve &curve, const Vec3 &x);

struct FieldPair
{
  CVec3 e, h;
};

// Exact Maxwell fields used as manufactured solutions: the exterior field is radiated by
// random band-limited Debye sources on a copy of Gamma shrunk by 0.5 about the tube
// center (medium 1), the interior field by sources on a copy grown by 1.5 (medium 0).
class ManufacturedProblem
{
public:
  ManufacturedProblem(const FourierCurve &curve, int mode, const MaterialParams &params,
                      std::uint64_t seed, int aux_nodes = 128, double amplitude = 1.0);

  FieldPair exterior_field(const Vec3 &x) const;
  FieldPair interior_field(const Vec3 &x) const;

  BoundaryData dielectric_data(const SurfaceGrid &grid) const;
  // Scattered-field data for the PEC problem, the exterior field being the target.
  BoundaryData pec_data(const SurfaceGrid &grid) const;

  int mode() const { return mode_; }

  ManufacturedProblem(const ManufacturedProblem &) = delete;
  ManufacturedProblem &operator=(const ManufacturedProblem &) = delete;

private:
  int mode_;
  MaterialParams params_;
  SurfaceGrid inner_, outer_;
  ModalSources src_inner_, src_outer_;
  FieldEvaluator eval_inner_, eval_outer_;
};

// Seeded probe points: exterior ones 0.25 to 0.75 tube diameters off Gamma along the
// normal, interior ones on rays from the tube center at 0.2 to 0.7 of the way to Gamma.
struct ProbeSet
{
  std::vector<Vec3> exterior, interior;
};
ProbeSet make_probes(const FourierCurve &curve, int count, std::uint64_t seed);

struct AccuracyRow
{
  double omega;
  int mode;
  double err_exterior, err_interior, condition, residual;
};
std::vector<AccuracyRow> run_manufactured(const ExperimentConfig &cfg);

// Dielectric solve of the manufactured problem at omegas[0], modes[0]; returns the
// solution together with its accuracy row.
std::pair<DebyeSourceSet, AccuracyRow> solve_manufactured_dielectric(const ExperimentConfig &cfg);
std::pair<DebyeSourceSet, AccuracyRow> solve_manufactured_pec(const ExperimentConfig &cfg);

struct ConditionCell
{
  double tc, omega;
  int mode;
  double condition;
  bool flagged;  // non-finite or beyond 1e14
};
// Dielectric condition numbers over tc_list x omegas at modes[0], with zero data.
std::vector<ConditionCell> run_clutch_sweep(const ExperimentConfig &cfg);
// Dielectric condition numbers over omegas at tc, modes[0].
std::vector<ConditionCell> run_resonance_scan(const ExperimentConfig &cfg);

struct PecRow
{
  double omega;
  int mode;
  double condition, residual, err_exterior;
};
std::vector<PecRow> run_pec(const ExperimentConfig &cfg);

struct CheckResult
{
  std::string module, id;
  double measured, threshold;
  bool passed;
};
// Invariant checks of every module at N = nodes.
std::vector<CheckResult> selftest(int nodes = 100);

// CSV output: header line, then a '#' provenance line with the config hash and seed.
class CsvWriter
{
public:
  CsvWriter(const std::string &path, const std::vector<std::string> &header,
            const ExperimentConfig &cfg);
  void row(const std::vector<std::string> &cells);
  static std::string num(double v);
  static std::string num(int v);
  // Two cells, real and imaginary parts.
  static std::vector<std::string> complex(cplx v);

private:
  std::ofstream out_;
  std::size_t columns_;
};

}  // namespace debye

#endif  // DEBYE_EXPERIMENTS_HPP
