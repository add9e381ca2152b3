#pragma once

#include "gkdv/core/sampled.hpp"

namespace gkdv {

// Riemann-Liouville fractional integral of order alpha in (0, 1],
//   I_alpha(h)(t) = (1/Gamma(alpha)) Integral_0^t (t-s)^{alpha-1} h(s) ds,
// for h sampled on a uniform time grid starting at 0 (h == 0 for t < 0).
// Product-trapezoid quadrature: the singular factor is integrated exactly
// against the piecewise-linear interpolant of h, so the rule is order 2 for
// smooth h despite the endpoint singularity.
SampledFunction riemann_liouville(const SampledFunction& h, double alpha);

// I_{-alpha} for alpha in (0, 1), realized as (d/dt) I_{1-alpha}. Requires the
// vanishing trace f(0) = 0: |f(0)| <= zero_trace_tol * max|f| or it throws.
SampledFunction fractional_derivative(const SampledFunction& f, double alpha,
                                      double zero_trace_tol = 1e-8);

namespace detail {
// Panel weights for Integral tau^{alpha-1} * {1, (tau - j dt)/dt} over
// [j dt, (j+1) dt], divided by dt^alpha.
void product_weights(double alpha, int panels, std::vector<double>& a,
                     std::vector<double>& b);
}  // namespace detail

}  // namespace gkdv
