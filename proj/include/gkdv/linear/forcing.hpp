#pragma once

#include "gkdv/core/sampled.hpp"
#include "gkdv/linear/propagator.hpp"

namespace gkdv {

// Boundary-forcing Duhamel term
//   w(x, t) = Integral_0^t (t-t')^{-1/3} A(x/(t-t')^{1/3}) h(t') dt',
// evaluated by product integration: the singular factor (t-t')^{-1/3} is
// integrated exactly against the piecewise-linear interpolant of
// A(x/(t-t')^{1/3}) h(t'). At the singular endpoint the kernel takes its
// limiting value (A(0) at x = 0, zero otherwise).
//
// O(n_x n_t^2); meant for traces, patches and cross-checks. The solver uses
// the spectral route below for full fields.
SpaceTimeField forcing_term(const SampledFunction& h, const Grid1D& xgrid, const Grid1D& tgrid);

// Just the x = x0 column of the above (same quadrature).
SampledFunction forcing_trace(const SampledFunction& h, double x0, const Grid1D& tgrid);

// Same field through the periodized spectral representation (unit density on
// every lattice mode). The kernel is periodized over the box, so the field
// carries wraparound images of the slowly decaying left tail: percent-level
// differences from forcing_term are normal. Kept for cross-checks; the
// production path is ForcingKernel below.
SpaceTimeField forcing_term_spectral(const PropagatorPlan& plan, const SampledFunction& h);

// FFT-accelerated evaluation of the exact product quadrature: per spatial
// column the rule is a causal convolution in time, so the field costs
// O(n_x n_t log n_t) after caching the kernel samples A(x/(j dt)^{1/3}).
// Bit-identical to forcing_term for real h (up to FFT rounding).
class ForcingKernel {
 public:
  ForcingKernel(const Grid1D& xgrid, const Grid1D& tgrid);

  // Field of the product rule applied to Re(h); the gKdV data path is real.
  SpaceTimeField field(const SampledFunction& h) const;

  const Grid1D& xgrid() const { return xg_; }
  const Grid1D& tgrid() const { return tg_; }

 private:
  Grid1D xg_;
  Grid1D tg_;
  int pad_;
  FftPlan plan_;
  std::vector<double> kernel_;   // [x][j], j dt = time lag
  std::vector<double> wa_, wb_;  // product weights (dt^{2/3} included)
};

}  // namespace gkdv
