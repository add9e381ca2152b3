#pragma once

#include "gkdv/core/sampled.hpp"

namespace gkdv {

// Even C-infinity cutoff: exactly 1 on [-plateau, plateau], exactly 0 outside
// [-support, support], bump-integral ramp in between.
class SmoothCutoff {
 public:
  SmoothCutoff(double plateau_halfwidth, double support_halfwidth);

  double operator()(double x) const;
  double plateau() const { return plateau_; }
  double support() const { return support_; }

  SampledFunction sample(const Grid1D& grid, DomainTag tag) const;

 private:
  double plateau_;
  double support_;
};

SampledFunction smooth_cutoff(double plateau_halfwidth, double support_halfwidth,
                              const Grid1D& grid, DomainTag tag = DomainTag::time);

// The nested cutoff triple for a window of half-width T0:
// all are 1 on [-T0, T0] and supported in [-2T0, 2T0], with
// psi1 * psi2 = psi1 and psi2 * psi3 = psi2 exactly node-wise.
struct CutoffTriple {
  SmoothCutoff psi1;
  SmoothCutoff psi2;
  SmoothCutoff psi3;
  explicit CutoffTriple(double T0)
      : psi1(T0, 4.0 * T0 / 3.0),
        psi2(4.0 * T0 / 3.0, 5.0 * T0 / 3.0),
        psi3(5.0 * T0 / 3.0, 2.0 * T0) {}
};

}  // namespace gkdv
