#pragma once

#include "gkdv/core/transform.hpp"

namespace gkdv {

// Discrete Sobolev norm on the grid's periodic box:
//   (2pi sum_j w(xi_j)^{2s} |f_hat(xi_j)|^2 dxi)^{1/2},
// w = 1 + |xi| (inhomogeneous) or w = |xi| (homogeneous). The homogeneous
// weight with s < 0 requires a vanishing DC coefficient.
double sobolev_norm(const SampledFunction& f, double s, bool homogeneous);

// Same norm evaluated from an existing spectrum.
double sobolev_norm(const SpectralField& spec, double s, bool homogeneous);

}  // namespace gkdv
