// SPDX-License-Identifier: Apache-2.0

#ifndef DEBYE_QUADRATURE_HPP
#define DEBYE_QUADRATURE_HPP

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace debye
{

using cplx = std::complex<double>;

struct GaussLegendre
{
  std::vector<double> nodes, weights;  // on [-1, 1]
};

// Cached for repeated sizes; thread safe.
const GaussLegendre &gauss_legendre(int n);

// Symmetric end correction for a logarithmic singularity at a trapezoid node. Nodes
// t_i + j h with 0 < |j| < skip are dropped and replaced by t_i +- nodes[k] h with weight
// weights[k] h each.
struct AlpertRule
{
  int skip = 0;
  std::vector<double> nodes, weights;
};

const AlpertRule &alpert_order8();
const AlpertRule &alpert_order16();
// order must be 8 or 16; throws ConfigError otherwise.
const AlpertRule &alpert_rule(int order);

// Weights w_j(t) of the trigonometric interpolant through N equispaced samples on
// [0, 2pi), the Nyquist term split as a cosine.
Eigen::VectorXd periodic_interp_weights(int n_nodes, double t);

// Approximates int_0^{2pi} K(t) f(t) dt where K is log-singular at t_i = 2 pi i / N and
// f is given by its samples. kernel(t) is called at regular and auxiliary points; t may lie
// outside [0, 2pi).
cplx alpert_integrate(const Eigen::VectorXcd &samples, int singular_index,
                      const AlpertRule &rule, const std::function<cplx(double)> &kernel);

// Fixed composite Gauss-Legendre rule on [-pi, pi] with panels graded geometrically toward
// 0 starting from width `scale`, no panel wider than max_width (or pi/4).
struct AzimuthalRule
{
  std::vector<double> nodes, weights;
};
AzimuthalRule graded_azimuthal_rule(double scale, double max_width, int points = 16);

struct AzimuthalResult
{
  cplx value;
  double error = 0.0;
  bool converged = true;
};

// Adaptive evaluation of int_0^{2pi} kernel(d) e^{-i n d} dd, bisecting panels graded
// toward d = 0 (mod 2pi) until 16-point and split 16-point estimates agree to tol.
struct AzimuthalIntegrator
{
  double tol = 1e-12;
  int max_depth = 40;

  AzimuthalResult integrate(const std::function<cplx(double)> &kernel, int mode) const;
};

}  // namespace debye

#endif  // DEBYE_QUADRATURE_HPP
