#include "gkdv/linear/duhamel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gkdv {

namespace detail {

void etd_weights(double w, cplx& phi1, cplx& psi) {
  const cplx z{0.0, w};
  if (std::abs(w) < 0.5) {
    // phi1 = sum z^k/(k+1)!, psi = sum z^k (k+1)/(k+2)!.
    cplx zp{1.0, 0.0};
    phi1 = cplx{0.0, 0.0};
    psi = cplx{0.0, 0.0};
    double fact = 1.0;  // k!
    for (int k = 0; k <= 14; ++k) {
      phi1 += zp / (fact * (k + 1.0));
      psi += zp * ((k + 1.0) / (fact * (k + 1.0) * (k + 2.0)));
      zp *= z;
      fact *= (k + 1.0);
    }
  } else {
    const cplx ez = std::polar(1.0, w);
    phi1 = (ez - 1.0) / z;
    psi = (ez * (z - 1.0) + 1.0) / (z * z);
  }
}

}  // namespace detail

SpectralRows to_spectral(const SpaceTimeField& f, const FftPlan& plan) {
  SpectralRows out(f.xgrid, f.tgrid);
  const double dx = f.xgrid.spacing();
#pragma omp parallel for schedule(static)
  for (int it = 0; it < f.tgrid.n; ++it) {
    cplx* r = out.row(it);
    const cplx* src = f.row(it);
    for (int i = 0; i < f.xgrid.n; ++i) r[i] = src[i];
    row_to_spectrum(r, plan, dx);
  }
  return out;
}

SpaceTimeField to_physical(const SpectralRows& s, const FftPlan& plan) {
  SpaceTimeField out(s.base_grid, s.tgrid);
  const double dx = s.base_grid.spacing();
#pragma omp parallel for schedule(static)
  for (int it = 0; it < s.tgrid.n; ++it) {
    cplx* r = out.row(it);
    const cplx* src = s.row(it);
    for (int i = 0; i < s.base_grid.n; ++i) r[i] = src[i];
    spectrum_to_row(r, plan, dx);
  }
  return out;
}

SampledFunction rows_trace_at_origin(const SpectralRows& s) {
  SampledFunction out(s.tgrid, DomainTag::time);
  const double dxi = std::numbers::pi / s.base_grid.half_width();
  const int nx = s.base_grid.n;
#pragma omp parallel for schedule(static)
  for (int it = 0; it < s.tgrid.n; ++it) {
    const cplx* r = s.row(it);
    cplx acc{0.0, 0.0};
    for (int i = 0; i < nx; ++i) acc += r[i];
    out.values[it] = acc * dxi;
  }
  return out;
}

namespace {

// Physical-space absorption factors e^{-sigma(x) * stride * dt}.
std::vector<double> sponge_factors(const std::vector<double>& sigma, double tau) {
  std::vector<double> d(sigma.size());
  for (size_t i = 0; i < sigma.size(); ++i) d[i] = std::exp(-sigma[i] * tau);
  return d;
}

void damp_row(cplx* row, const std::vector<double>& damp, const FftPlan& plan, double dx) {
  spectrum_to_row(row, plan, dx);
  for (size_t i = 0; i < damp.size(); ++i) row[i] *= damp[i];
  row_to_spectrum(row, plan, dx);
}

}  // namespace

SpectralRows duhamel_rows(const PropagatorPlan& plan, const SpectralRows& source,
                          const std::vector<double>* sponge, int sponge_stride) {
  if (!(source.base_grid == plan.grid()))
    throw std::invalid_argument("duhamel_rows: grid mismatch");
  const int nt = source.tgrid.n;
  const int nx = source.base_grid.n;
  const double dt = source.tgrid.spacing();
  const auto& xi3 = plan.xi_cubed();

  SpectralRows out(source.base_grid, source.tgrid);
  if (!sponge) {
#pragma omp parallel for schedule(static)
    for (int m = 0; m < nx; ++m) {
      const double theta = xi3[m];
      const cplx E = std::polar(1.0, dt * theta);
      cplx phi1, psi;
      detail::etd_weights(-dt * theta, phi1, psi);
      const cplx wa = dt * (phi1 - psi);
      const cplx wb = dt * psi;
      cplx w{0.0, 0.0};
      for (int n = 0; n + 1 < nt; ++n) {
        const cplx a = source.coef[static_cast<size_t>(n) * nx + m];
        const cplx b = source.coef[static_cast<size_t>(n + 1) * nx + m];
        w = E * (w + wa * a + wb * b);
        out.coef[static_cast<size_t>(n + 1) * nx + m] = w;
      }
    }
    return out;
  }

  // Absorbing-layer path: march all modes step by step, draining the layer
  // every few steps in physical space.
  const int stride = std::max(1, sponge_stride);
  const std::vector<double> damp = sponge_factors(*sponge, stride * dt);
  std::vector<cplx> E(nx), wa(nx), wb(nx), w(nx, cplx{0.0, 0.0});
#pragma omp parallel for schedule(static)
  for (int m = 0; m < nx; ++m) {
    const double theta = xi3[m];
    E[m] = std::polar(1.0, dt * theta);
    cplx phi1, psi;
    detail::etd_weights(-dt * theta, phi1, psi);
    wa[m] = dt * (phi1 - psi);
    wb[m] = dt * psi;
  }
  const double dx = source.base_grid.spacing();
  for (int n = 0; n + 1 < nt; ++n) {
    const cplx* a = source.row(n);
    const cplx* b = source.row(n + 1);
#pragma omp parallel for schedule(static)
    for (int m = 0; m < nx; ++m) w[m] = E[m] * (w[m] + wa[m] * a[m] + wb[m] * b[m]);
    if ((n + 1) % stride == 0) damp_row(w.data(), damp, plan.fft(), dx);
    std::copy(w.begin(), w.end(), out.row(n + 1));
  }
  return out;
}

SpectralRows group_rows(const PropagatorPlan& plan, const SpectralField& phi_hat,
                        const Grid1D& tgrid, const std::vector<double>* sponge,
                        int sponge_stride) {
  SpectralRows out(plan.grid(), tgrid);
  const int nx = plan.grid().n;
  const int nt = tgrid.n;
  const double dt = tgrid.spacing();
  const auto& xi3 = plan.xi_cubed();

  if (!sponge) {
#pragma omp parallel for schedule(static)
    for (int m = 0; m < nx; ++m) {
      cplx ph = std::polar(1.0, tgrid.node(0) * xi3[m]);
      const cplx step = std::polar(1.0, dt * xi3[m]);
      const cplx c = phi_hat.coefficients[m];
      for (int n = 0; n < nt; ++n) {
        if ((n & 511) == 0) ph = std::polar(1.0, tgrid.node(n) * xi3[m]);
        out.coef[static_cast<size_t>(n) * nx + m] = c * ph;
        ph *= step;
      }
    }
    return out;
  }

  const int stride = std::max(1, sponge_stride);
  const std::vector<double> damp = sponge_factors(*sponge, stride * dt);
  const double dx = plan.grid().spacing();
  std::vector<cplx> step(nx), w(phi_hat.coefficients);
  for (int m = 0; m < nx; ++m) step[m] = std::polar(1.0, dt * xi3[m]);
  std::copy(w.begin(), w.end(), out.row(0));
  for (int n = 1; n < nt; ++n) {
#pragma omp parallel for schedule(static)
    for (int m = 0; m < nx; ++m) w[m] *= step[m];
    if (n % stride == 0) damp_row(w.data(), damp, plan.fft(), dx);
    std::copy(w.begin(), w.end(), out.row(n));
  }
  return out;
}

SpectralRows dirac_duhamel_rows(const PropagatorPlan& plan, const SampledFunction& h) {
  if (h.tag != DomainTag::time)
    throw std::invalid_argument("dirac_duhamel_rows: h must be a time series");
  const int nt = h.grid.n;
  const int nx = plan.grid().n;
  const double dt = h.grid.spacing();
  const auto& xi3 = plan.xi_cubed();
  // Unit spectral density: the field then matches the Airy-kernel integral
  // Int (t-t')^{-1/3} A(x/(t-t')^{1/3}) h(t') dt' whose trace carries C_A.
  const double amp = 1.0;

  SpectralRows out(plan.grid(), h.grid);
#pragma omp parallel for schedule(static)
  for (int m = 0; m < nx; ++m) {
    const double theta = xi3[m];
    const cplx E = std::polar(1.0, dt * theta);
    cplx phi1, psi;
    detail::etd_weights(-dt * theta, phi1, psi);
    const cplx wa = dt * amp * (phi1 - psi);
    const cplx wb = dt * amp * psi;
    cplx w{0.0, 0.0};
    for (int n = 0; n + 1 < nt; ++n) {
      w = E * (w + wa * h.values[n] + wb * h.values[n + 1]);
      out.coef[static_cast<size_t>(n + 1) * nx + m] = w;
    }
  }
  return out;
}

SpaceTimeField duhamel_inhomogeneous(const PropagatorPlan& plan, const SpaceTimeField& source,
                                     const Grid1D& tgrid) {
  if (!(source.xgrid == plan.grid()))
    throw std::invalid_argument("duhamel_inhomogeneous: spatial grid mismatch");
  if (!(source.tgrid == tgrid))
    throw std::invalid_argument("duhamel_inhomogeneous: time grid mismatch");
  SpectralRows src = to_spectral(source, plan.fft());
  SpectralRows rows = duhamel_rows(plan, src);
  return to_physical(rows, plan.fft());
}

}  // namespace gkdv
