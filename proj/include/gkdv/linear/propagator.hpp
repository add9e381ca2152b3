#pragma once

#include <limits>

#include "gkdv/core/transform.hpp"

namespace gkdv {

// Reusable workspace for the free group S(t): phase multiplier e^{i t xi^3}
// on the periodic box. Immutable after construction; share across threads.
class PropagatorPlan {
 public:
  PropagatorPlan(const Grid1D& grid, double safe_horizon = std::numeric_limits<double>::infinity());

  const Grid1D& grid() const { return grid_; }
  const std::vector<double>& wavenumbers() const { return xi_; }
  const std::vector<double>& xi_cubed() const { return xi3_; }
  const FftPlan& fft() const { return fft_; }
  double safe_horizon() const { return safe_horizon_; }

  void check_horizon(double t, bool allow_beyond) const;

 private:
  Grid1D grid_;
  std::vector<double> xi_;
  std::vector<double> xi3_;
  FftPlan fft_;
  double safe_horizon_;
};

// Time horizon below which a wave packet of bandwidth `band` launched inside
// |x| <= x_interest has not wrapped around the periodic box back into the
// region of interest (group speed of the cubic symbol is 3 xi^2, leftward).
double wraparound_horizon(double box_half_width, double x_interest, double band);

// S(t) f: spectrum multiplied mode-wise by e^{i t xi^3}. L2-isometric.
SampledFunction group_apply(const PropagatorPlan& plan, const SampledFunction& f, double t,
                            bool allow_beyond_horizon = false);

// t -> S(t) f (0) sampled on tgrid: sum_j e^{i t xi_j^3} f_hat(xi_j) dxi.
SampledFunction group_trace(const PropagatorPlan& plan, const SampledFunction& f,
                            const Grid1D& tgrid, bool allow_beyond_horizon = false);

// Trace directly from a spectrum (used when the spectrum is already at hand).
SampledFunction group_trace_spectrum(const SpectralField& spec, const Grid1D& tgrid);

}  // namespace gkdv
