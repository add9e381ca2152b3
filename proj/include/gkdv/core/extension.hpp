#pragma once

#include "gkdv/core/sampled.hpp"

namespace gkdv {

// Whole-line extension of half-line data by two-term Whitney reflection,
//   ext(-x) = (3 phi(x) - 2 phi(2x)) * chi(x),   x > 0,
// with chi a smooth cutoff supported in [0, w], w = min(X/2, reflect_width).
// Matches value and first derivative at x = 0 and is H^s-bounded for s <= 1.
// Exact at shared nodes on [0, X]; zero for x > X (phi is expected to have
// decayed by then). Keeping the reflection window near the boundary stops
// interior structure from being cloned onto x < 0, where it would evolve on
// its own and pollute the box.
//
// Preconditions: phi.grid starts at 0, target has the same spacing, contains
// [0, X] and reaches below -w.
SampledFunction extend_halfline(const SampledFunction& phi, double s, const Grid1D& target,
                                double reflect_width = 4.0);

}  // namespace gkdv
