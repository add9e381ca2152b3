#include "gkdv/fractional/riemann_liouville.hpp"

#include <cmath>
#include <stdexcept>

#include "gkdv/fractional/gamma.hpp"

namespace gkdv {

namespace detail {

void product_weights(double alpha, int panels, std::vector<double>& a,
                     std::vector<double>& b) {
  // A_j = Integral over [j,j+1] of tau^{alpha-1}, B_j the same against (tau-j);
  // both in units of dt^alpha.
  a.resize(panels);
  b.resize(panels);
  const double ap1 = alpha + 1.0;
  double pj_a = 0.0;   // j^alpha
  double pj_a1 = 0.0;  // j^{alpha+1}
  for (int j = 0; j < panels; ++j) {
    const double pj1_a = std::pow(j + 1.0, alpha);
    const double pj1_a1 = std::pow(j + 1.0, ap1);
    const double da = (pj1_a - pj_a) / alpha;
    a[j] = da;
    b[j] = (pj1_a1 - pj_a1) / ap1 - j * da;
    pj_a = pj1_a;
    pj_a1 = pj1_a1;
  }
}

}  // namespace detail

SampledFunction riemann_liouville(const SampledFunction& h, double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::invalid_argument(
        "riemann_liouville: alpha must lie in (0,1]; use fractional_derivative for alpha < 0");
  if (h.tag != DomainTag::time)
    throw std::invalid_argument("riemann_liouville: expects a time series");
  if (std::abs(h.grid.start) > 1e-12 * h.grid.spacing())
    throw std::invalid_argument("riemann_liouville: grid must start at t = 0");
  h.require_finite("riemann_liouville");

  const int n = h.grid.n;
  const double dt = h.grid.spacing();
  std::vector<double> A, B;
  detail::product_weights(alpha, n, A, B);
  const double scale = std::pow(dt, alpha) / gamma_function(alpha);

  SampledFunction out(h.grid, DomainTag::time);
  out.values[0] = cplx{0.0, 0.0};
#pragma omp parallel for schedule(static)
  for (int m = 1; m < n; ++m) {
    // I(t_m) = sum over panels j of (A_j - B_j) h_{m-j} + B_j h_{m-j-1}.
    cplx acc{0.0, 0.0};
    for (int j = 0; j < m; ++j)
      acc += (A[j] - B[j]) * h.values[m - j] + B[j] * h.values[m - j - 1];
    out.values[m] = scale * acc;
  }
  return out;
}

SampledFunction fractional_derivative(const SampledFunction& f, double alpha,
                                      double zero_trace_tol) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::invalid_argument("fractional_derivative: alpha must lie in (0,1)");
  const double scale = f.max_abs();
  if (std::abs(f.values[0]) > zero_trace_tol * (scale + 1e-300))
    throw std::invalid_argument(
        "fractional_derivative: f(0) != 0 violates the vanishing-trace condition "
        "required to invert the fractional integral");

  const SampledFunction g = riemann_liouville(f, 1.0 - alpha);
  const int n = g.grid.n;
  const double dt = g.grid.spacing();
  SampledFunction out(g.grid, DomainTag::time);
  if (n < 5) throw std::invalid_argument("fractional_derivative: grid too short");

  auto oneside = [&](int i, int dir) {
    // 4th-order one-sided first derivative.
    return static_cast<double>(dir) *
           (-25.0 / 12.0 * g.values[i] + 4.0 * g.values[i + dir] -
            3.0 * g.values[i + 2 * dir] + 4.0 / 3.0 * g.values[i + 3 * dir] -
            0.25 * g.values[i + 4 * dir]) /
           dt;
  };
  out.values[0] = oneside(0, +1);
  out.values[1] = oneside(1, +1);
  for (int i = 2; i < n - 2; ++i)
    out.values[i] = (-g.values[i + 2] + 8.0 * g.values[i + 1] - 8.0 * g.values[i - 1] +
                     g.values[i - 2]) /
                    (12.0 * dt);
  out.values[n - 2] = oneside(n - 2, -1);
  out.values[n - 1] = oneside(n - 1, -1);
  return out;
}

}  // namespace gkdv
