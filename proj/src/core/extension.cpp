#include "gkdv/core/extension.hpp"

#include <cmath>
#include <stdexcept>

#include "gkdv/core/cutoff.hpp"

namespace gkdv {

SampledFunction extend_halfline(const SampledFunction& phi, double s, const Grid1D& target,
                                double reflect_width) {
  (void)s;  // one reflection operator covers the exercised range s <= 1
  phi.require_finite("extend_halfline");
  const double dx = phi.grid.spacing();
  if (std::abs(phi.grid.start) > 1e-12 * dx)
    throw std::invalid_argument("extend_halfline: phi must start at x = 0");
  if (std::abs(target.spacing() - dx) > 1e-12 * dx)
    throw std::invalid_argument("extend_halfline: target spacing differs from phi's");
  const double X = phi.grid.end;
  const double w = std::min(0.5 * X, reflect_width);
  if (!(w > 4.0 * dx))
    throw std::invalid_argument("extend_halfline: reflection window under-resolved");
  if (!target.has_node(0.0) || target.end < X - 1e-12 || target.start > -w)
    throw std::invalid_argument("extend_halfline: target must contain [-w, X]");

  const int i0 = target.index_of(0.0);
  SampledFunction out(target, DomainTag::space);

  // Exact copy on [0, X]; zero beyond (phi should have decayed).
  for (int j = 0; j < phi.grid.n && i0 + j < target.n; ++j) out.values[i0 + j] = phi.values[j];

  // Reflection with a cutoff supported in [0, w] so 2x stays inside [0, X].
  const SmoothCutoff chi(0.5 * w, w);
  const int jmax = std::min(i0, (phi.grid.n - 1) / 2);
  for (int j = 1; j <= jmax; ++j) {
    const double c = chi(j * dx);
    if (c == 0.0) break;
    out.values[i0 - j] = (3.0 * phi.values[j] - 2.0 * phi.values[2 * j]) * c;
  }
  return out;
}

}  // namespace gkdv
