// SPDX-License-Identifier: Apache-2.0

#ifndef DEBYE_TESTS_SUPPORT_HPP
#define DEBYE_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>

#include "debye/experiments.hpp"

namespace testing
{

using namespace debye;

inline FourierCurve circular_torus(double major = 2.0, double minor = 0.5)
{
  return FourierCurve{{major, minor}, {0.0, 0.0}, {0.0}, {0.0, minor}};
}

// Random trigonometric polynomial sampled at the grid nodes, coefficients decaying like
// 1 / (1 + m^2).
inline CVector band_limited(const SurfaceGrid &g, std::uint64_t seed, int band)
{
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  CVector f = CVector::Zero(g.n_nodes);
  for (int m = -band; m <= band; m++)
  {
    const cplx c(nd(rng), nd(rng));
    for (int i = 0; i < g.n_nodes; i++)
    {
      f[i] += c * std::exp(cplx(0.0, m * g.t(i))) / (1.0 + m * m);
    }
  }
  return f;
}

inline CVector mean_free(const SurfaceCalculus &calc, CVector f)
{
  f.array() -= (calc.mean_row().cast<cplx>() * f)(0);
  return f;
}

inline double max_abs(const CVector &v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

inline const MaterialParams &reference_params()
{
  static const MaterialParams p = material_params(0.90, 1.10, 1.30, 0.83, 1.0);
  return p;
}

}  // namespace testing

#endif  // DEBYE_TESTS_SUPPORT_HPP
