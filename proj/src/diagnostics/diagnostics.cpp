#include "gkdv/diagnostics/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace gkdv {

namespace {

double real_pow(double base, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= base;
  return r;
}

}  // namespace

double pde_residual(const SpaceTimeField& u, int k, const Region& patch,
                    double nonlinear_coefficient) {
  const Grid1D& xg = u.xgrid;
  const Grid1D& tg = u.tgrid;
  const double dx = xg.spacing(), dt = tg.spacing();
  if (patch.x_min <= 0.0)
    throw std::invalid_argument("pde_residual: patch must exclude the x = 0 source line");

  // 4th-order stencils: 3 x-neighbors and 2 t-neighbors each side.
  int ix0 = static_cast<int>(std::ceil((patch.x_min - xg.start) / dx));
  int ix1 = static_cast<int>(std::floor((patch.x_max - xg.start) / dx));
  int it0 = static_cast<int>(std::ceil((patch.t_min - tg.start) / dt));
  int it1 = static_cast<int>(std::floor((patch.t_max - tg.start) / dt));
  if (ix0 < 3 || ix1 > xg.n - 4 || it0 < 2 || it1 > tg.n - 3 || ix0 > ix1 || it0 > it1)
    throw std::invalid_argument("pde_residual: patch leaves no room for the stencils");

  double worst = 0.0, scale = 0.0;
  for (int it = it0; it <= it1; ++it) {
    for (int ix = ix0; ix <= ix1; ++ix) {
      const double ut = (-u.at(it + 2, ix).real() + 8.0 * u.at(it + 1, ix).real() -
                         8.0 * u.at(it - 1, ix).real() + u.at(it - 2, ix).real()) /
                        (12.0 * dt);
      const double ux = (-u.at(it, ix + 2).real() + 8.0 * u.at(it, ix + 1).real() -
                         8.0 * u.at(it, ix - 1).real() + u.at(it, ix - 2).real()) /
                        (12.0 * dx);
      const double uxxx =
          (0.125 * u.at(it, ix - 3).real() - u.at(it, ix - 2).real() +
           1.625 * u.at(it, ix - 1).real() - 1.625 * u.at(it, ix + 1).real() +
           u.at(it, ix + 2).real() - 0.125 * u.at(it, ix + 3).real()) /
          (dx * dx * dx);
      const double nl = nonlinear_coefficient * real_pow(u.at(it, ix).real(), k) * ux;
      worst = std::max(worst, std::abs(ut + uxxx + nl));
      scale = std::max(scale, std::abs(ut) + std::abs(uxxx) + std::abs(nl));
    }
  }
  return scale > 0.0 ? worst / scale : 0.0;
}

std::vector<double> mass_series(const SpaceTimeField& u) {
  const int i0 = u.xgrid.index_of(0.0);
  const double dx = u.xgrid.spacing();
  std::vector<double> out(u.tgrid.n, 0.0);
  for (int it = 0; it < u.tgrid.n; ++it) {
    double acc = 0.5 * std::norm(u.at(it, i0));
    for (int ix = i0 + 1; ix < u.xgrid.n - 1; ++ix) acc += std::norm(u.at(it, ix));
    acc += 0.5 * std::norm(u.at(it, u.xgrid.n - 1));
    out[it] = acc * dx;
  }
  return out;
}

IdentityLedger quarter_plane_balance(const SpaceTimeField& u, const SampledFunction& f,
                                    const SampledFunction& phi, int k) {
  if (!(f.grid == u.tgrid))
    throw std::invalid_argument("quarter_plane_balance: f must live on the field's time grid");
  const int i0 = u.xgrid.index_of(0.0);
  if (i0 > u.xgrid.n - 4)
    throw std::invalid_argument("quarter_plane_balance: x grid too coarse for boundary stencils");
  const double dx = u.xgrid.spacing(), dt = u.tgrid.spacing();
  const int nt = u.tgrid.n;

  const std::vector<double> mass = mass_series(u);

  double phi_sq = 0.0;
  for (int i = 0; i < phi.grid.n; ++i) {
    const double w = (i == 0 || i == phi.grid.n - 1) ? 0.5 : 1.0;
    phi_sq += w * std::norm(phi.values[i]);
  }
  phi_sq *= phi.grid.spacing();

  std::vector<double> ux0(nt), uxx0(nt), fpow(nt);
  for (int it = 0; it < nt; ++it) {
    const double u0 = u.at(it, i0).real(), u1 = u.at(it, i0 + 1).real(),
                 u2 = u.at(it, i0 + 2).real(), u3 = u.at(it, i0 + 3).real();
    ux0[it] = (-11.0 * u0 + 18.0 * u1 - 9.0 * u2 + 2.0 * u3) / (6.0 * dx);
    uxx0[it] = (2.0 * u0 - 5.0 * u1 + 4.0 * u2 - u3) / (dx * dx);
    fpow[it] = real_pow(f.values[it].real(), k + 2);
  }

  IdentityLedger led;
  led.name = "quarter-plane mass/energy balance";
  led.lhs.resize(nt);
  led.rhs.assign(nt, phi_sq);
  led.relative_imbalance.resize(nt);

  double int_ux2 = 0.0, int_uxx_f = 0.0, int_fpow = 0.0;
  for (int it = 0; it < nt; ++it) {
    if (it > 0) {
      int_ux2 += 0.5 * dt * (ux0[it - 1] * ux0[it - 1] + ux0[it] * ux0[it]);
      int_uxx_f += 0.5 * dt *
                   (uxx0[it - 1] * f.values[it - 1].real() + uxx0[it] * f.values[it].real());
      int_fpow += 0.5 * dt * (fpow[it - 1] + fpow[it]);
    }
    led.lhs[it] = mass[it] + int_ux2 - 2.0 * int_uxx_f - (2.0 / (k + 2.0)) * int_fpow;
    led.relative_imbalance[it] = std::abs(led.lhs[it] - led.rhs[it]) /
                                 (1.0 + std::max(std::abs(led.lhs[it]), std::abs(led.rhs[it])));
  }
  return led;
}

double convergence_order(const std::vector<std::pair<double, double>>& resolution_error) {
  if (resolution_error.size() < 3)
    throw std::invalid_argument("convergence_order: need at least 3 resolutions");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = static_cast<int>(resolution_error.size());
  for (const auto& [h, err] : resolution_error) {
    if (!(h > 0.0) || !(err > 0.0))
      throw std::invalid_argument("convergence_order: resolutions and errors must be positive");
    const double lx = std::log(h), ly = std::log(err);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace gkdv
