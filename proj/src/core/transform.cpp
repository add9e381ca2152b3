#include "gkdv/core/transform.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gkdv {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

FftPlan::FftPlan(int n) : n_(n) {
  if (!is_pow2(n)) throw std::invalid_argument("FftPlan: n must be a power of two >= 2");
  bitrev_.resize(n);
  int log2n = 0;
  while ((1 << log2n) < n) ++log2n;
  for (int i = 0; i < n; ++i) {
    int r = 0;
    for (int b = 0; b < log2n; ++b)
      if (i & (1 << b)) r |= 1 << (log2n - 1 - b);
    bitrev_[i] = r;
  }
  tw_.resize(n / 2);
  for (int k = 0; k < n / 2; ++k) tw_[k] = std::polar(1.0, -kTwoPi * k / n);
}

void FftPlan::execute(cplx* a, int sign) const {
  const int n = n_;
  for (int i = 0; i < n; ++i) {
    const int j = bitrev_[i];
    if (j > i) std::swap(a[i], a[j]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    const int half = len >> 1;
    const int step = n / len;
    for (int base = 0; base < n; base += len) {
      for (int k = 0; k < half; ++k) {
        cplx w = tw_[static_cast<size_t>(k) * step];
        if (sign > 0) w = std::conj(w);
        const cplx u = a[base + k];
        const cplx v = a[base + k + half] * w;
        a[base + k] = u + v;
        a[base + k + half] = u - v;
      }
    }
  }
}

std::vector<double> wavenumber_lattice(const Grid1D& grid) {
  const int n = grid.n;
  const double L = grid.half_width();
  std::vector<double> xi(n);
  for (int m = 0; m < n; ++m) xi[m] = std::numbers::pi * (m - n / 2) / L;
  return xi;
}

void row_to_spectrum(cplx* row, const FftPlan& plan, double dx) {
  const int n = plan.size();
  plan.execute(row, -1);
  // Reorder DFT bins to ascending wavenumber and apply (dx/2pi)(-1)^j.
  static thread_local std::vector<cplx> tmp;
  tmp.assign(row, row + n);
  const double scale = dx / kTwoPi;
  for (int m = 0; m < n; ++m) {
    const int j = m - n / 2;
    const int bin = j < 0 ? j + n : j;
    const double sgn = (j & 1) ? -1.0 : 1.0;
    row[m] = scale * sgn * tmp[bin];
  }
}

void spectrum_to_row(cplx* row, const FftPlan& plan, double dx) {
  const int n = plan.size();
  const double L = 0.5 * n * dx;
  const double dxi = std::numbers::pi / L;
  static thread_local std::vector<cplx> tmp;
  tmp.assign(n, cplx{0.0, 0.0});
  for (int m = 0; m < n; ++m) {
    const int j = m - n / 2;
    const int bin = j < 0 ? j + n : j;
    const double sgn = (j & 1) ? -1.0 : 1.0;
    tmp[bin] = sgn * row[m];
  }
  for (int i = 0; i < n; ++i) row[i] = tmp[i];
  plan.execute(row, +1);
  for (int i = 0; i < n; ++i) row[i] *= dxi;
}

SpectralField forward_transform(const SampledFunction& f, const FftPlan& plan) {
  f.require_finite("forward_transform");
  if (plan.size() != f.grid.n) throw std::invalid_argument("forward_transform: plan/grid mismatch");
  SpectralField out;
  out.base_grid = f.grid;
  out.wavenumbers = wavenumber_lattice(f.grid);
  out.coefficients = f.values;
  row_to_spectrum(out.coefficients.data(), plan, f.grid.spacing());
  return out;
}

SpectralField forward_transform(const SampledFunction& f) {
  if (!FftPlan::is_pow2(f.grid.n))
    throw std::invalid_argument("forward_transform: grid size must be a power of two");
  FftPlan plan(f.grid.n);
  return forward_transform(f, plan);
}

SampledFunction inverse_transform(const SpectralField& s, DomainTag tag) {
  const int n = s.base_grid.n;
  if (!FftPlan::is_pow2(n))
    throw std::invalid_argument("inverse_transform: grid size must be a power of two");
  FftPlan plan(n);
  SampledFunction out(s.base_grid, tag);
  out.values = s.coefficients;
  spectrum_to_row(out.values.data(), plan, s.base_grid.spacing());
  return out;
}

double l2_norm_physical(const SampledFunction& f) {
  double acc = 0.0;
  for (const cplx& v : f.values) acc += std::norm(v);
  return std::sqrt(acc * f.grid.spacing());
}

double l2_norm_spectral(const SpectralField& s) {
  double acc = 0.0;
  for (const cplx& c : s.coefficients) acc += std::norm(c);
  return std::sqrt(kTwoPi * acc * s.dxi());
}

namespace reference {

SpectralField dft(const SampledFunction& f) {
  f.require_finite("reference::dft");
  const int n = f.grid.n;
  const double dx = f.grid.spacing();
  const double L = f.grid.half_width();
  SpectralField out;
  out.base_grid = f.grid;
  out.wavenumbers.resize(n);
  out.coefficients.assign(n, cplx{0.0, 0.0});
  for (int m = 0; m < n; ++m) out.wavenumbers[m] = std::numbers::pi * (m - n / 2) / L;
  for (int m = 0; m < n; ++m) {
    const double xi = out.wavenumbers[m];
    cplx acc{0.0, 0.0};
    for (int i = 0; i < n; ++i) acc += f.values[i] * std::polar(1.0, -f.grid.node(i) * xi);
    out.coefficients[m] = acc * (dx / kTwoPi);
  }
  return out;
}

SampledFunction idft(const SpectralField& s, DomainTag tag) {
  const int n = s.base_grid.n;
  SampledFunction out(s.base_grid, tag);
  const double dxi = s.dxi();
  for (int i = 0; i < n; ++i) {
    const double x = s.base_grid.node(i);
    cplx acc{0.0, 0.0};
    for (int m = 0; m < n; ++m)
      acc += s.coefficients[m] * std::polar(1.0, x * s.wavenumbers[m]);
    out.values[i] = acc * dxi;
  }
  return out;
}

}  // namespace reference
}  // namespace gkdv
