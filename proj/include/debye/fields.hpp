// SPDX-License-Identifier: Apache-2.0

#ifndef DEBYE_FIELDS_HPP
#define DEBYE_FIELDS_HPP

#include <functional>
#include <utility>
#include <vector>

#include "debye/boundary_ops.hpp"
#include "debye/kernels.hpp"

namespace debye
{

// Fields at a point: xi is the electric field E, eta_star the magnetic field H (the
// 3-vector proxy of the 2-form *eta).
struct EMFieldSample
{
  Vec3 point;
  CVec3 xi, eta_star;
};

struct FieldConfig
{
  // Points closer than this to Gamma are rejected; <= 0 selects 1e-3 x tube diameter.
  double h_min = 0.0;
  int panel_points = 16;
};

// Scales of the representation: E = sqrt_mu (ik S[j] - grad S[r] - curl S[m]) and
// H = sqrt_eps (ik S[m] - grad S[q] + curl S[j]).
struct MediumScale
{
  cplx sqrt_eps = 1.0, sqrt_mu = 1.0;
};

class FieldEvaluator
{
public:
  FieldEvaluator(const SurfaceGrid &grid, FieldConfig cfg = {});

  // Sum over the given modes (each entry carries its own mode number).
  EMFieldSample evaluate(const Vec3 &point, const std::vector<ModalSources> &sources,
                         Wavenumber k, MediumScale scale) const;

  // Distance from point to the surface, measured in the meridian half plane.
  double distance_to_surface(const Vec3 &point) const;
  double h_min() const { return h_min_; }

private:
  const SurfaceGrid *grid_;
  FieldConfig cfg_;
  double h_min_;
};

// Maximum normalized residual of curl E - i omega mu H, curl H + i omega eps E, div E and
// div H at a point, from Richardson-extrapolated central differences with step `step`.
// `field` returns (E, H) at a point. Normalization: (|E| + |H|) max(|k|, 1/length).
using FieldFunction = std::function<std::pair<CVec3, CVec3>(const Vec3 &)>;
double maxwell_residual(const Vec3 &x, const FieldFunction &field, cplx omega, cplx eps,
                        cplx mu, double step, double length);

}  // namespace debye

#endif  // DEBYE_FIELDS_HPP
