#include "gkdv/core/cutoff.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace gkdv {

namespace {

// exp(1 - 1/(1-r^2)) on (-1,1), zero outside: the standard mollifier bump.
double bump(double r) {
  const double r2 = r * r;
  if (r2 >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - r2));
}

struct GaussRule {
  std::array<double, 64> node{};
  std::array<double, 64> weight{};
};

// 64-point Gauss-Legendre rule on [-1,1], Newton on the Legendre recurrence.
const GaussRule& gauss64() {
  static const GaussRule rule = [] {
    GaussRule r;
    const int n = 64;
    for (int i = 0; i < n; ++i) {
      double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        pp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / pp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      r.node[i] = x;
      r.weight[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return r;
  }();
  return rule;
}

// Integral of bump(2v-1) over [a, b] within [0, 1].
double bump_integral(double a, double b) {
  const GaussRule& g = gauss64();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < 64; ++i) {
    const double v = mid + half * g.node[i];
    acc += g.weight[i] * bump(2.0 * v - 1.0);
  }
  return acc * half;
}

}  // namespace

SmoothCutoff::SmoothCutoff(double plateau_halfwidth, double support_halfwidth)
    : plateau_(plateau_halfwidth), support_(support_halfwidth) {
  if (!(plateau_ > 0.0) || !(plateau_ < support_))
    throw std::invalid_argument("SmoothCutoff: need 0 < plateau < support");
}

double SmoothCutoff::operator()(double x) const {
  const double ax = std::abs(x);
  if (ax <= plateau_) return 1.0;
  if (ax >= support_) return 0.0;
  const double u = (ax - plateau_) / (support_ - plateau_);
  // Normalized tail mass of the bump: 1 at u=0, 0 at u=1, all derivatives flat
  // at both ends.
  static const double total = bump_integral(0.0, 1.0);
  return bump_integral(u, 1.0) / total;
}

SampledFunction SmoothCutoff::sample(const Grid1D& grid, DomainTag tag) const {
  SampledFunction out(grid, tag);
  for (int i = 0; i < grid.n; ++i) out.values[i] = cplx{(*this)(grid.node(i)), 0.0};
  return out;
}

SampledFunction smooth_cutoff(double plateau_halfwidth, double support_halfwidth,
                              const Grid1D& grid, DomainTag tag) {
  return SmoothCutoff(plateau_halfwidth, support_halfwidth).sample(grid, tag);
}

}  // namespace gkdv
