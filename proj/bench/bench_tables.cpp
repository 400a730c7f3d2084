// SPDX-License-Identifier: Apache-2.0
//
// OpenMP versus serial construction of the modal operator tables.

#include <benchmark/benchmark.h>

#include "debye/boundary_ops.hpp"

namespace
{

void tables(benchmark::State &state, bool parallel)
{
  const int n = static_cast<int>(state.range(0));
  const debye::SurfaceGrid grid = debye::build_surface_grid(debye::FourierCurve::reference_torus(), n);
  auto calc = std::make_shared<const debye::SurfaceCalculus>(grid, 1);
  debye::TableConfig cfg;
  cfg.parallel = parallel;
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(debye::assemble_operators(calc, debye::cplx(1.0, 0.0), cfg));
  }
  state.SetComplexityN(n);
}

void BM_TablesParallel(benchmark::State &state) { tables(state, true); }
void BM_TablesSerial(benchmark::State &state) { tables(state, false); }

}  // namespace

BENCHMARK(BM_TablesParallel)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TablesSerial)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
