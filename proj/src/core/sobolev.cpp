#include "gkdv/core/sobolev.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gkdv {

double sobolev_norm(const SpectralField& spec, double s, bool homogeneous) {
  double dc_mag = 0.0, max_mag = 0.0;
  for (int m = 0; m < spec.size(); ++m) {
    const double a = std::abs(spec.coefficients[m]);
    max_mag = std::max(max_mag, a);
    if (spec.wavenumbers[m] == 0.0) dc_mag = a;
  }
  if (homogeneous && s < 0.0 && dc_mag > 1e-12 * (max_mag + 1e-300))
    throw std::invalid_argument(
        "sobolev_norm: homogeneous weight with s < 0 needs a vanishing DC coefficient");

  double acc = 0.0;
  for (int m = 0; m < spec.size(); ++m) {
    const double axi = std::abs(spec.wavenumbers[m]);
    double w2s;
    if (homogeneous) {
      if (axi == 0.0) {
        if (s > 0.0) continue;       // |0|^{2s} = 0
        if (s < 0.0) continue;       // DC verified negligible above
        w2s = 1.0;                   // s = 0: plain L^2
      } else {
        w2s = std::pow(axi, 2.0 * s);
      }
    } else {
      w2s = std::pow(1.0 + axi, 2.0 * s);
    }
    acc += w2s * std::norm(spec.coefficients[m]);
  }
  return std::sqrt(2.0 * std::numbers::pi * acc * spec.dxi());
}

double sobolev_norm(const SampledFunction& f, double s, bool homogeneous) {
  f.require_finite("sobolev_norm");
  FftPlan plan(f.grid.n);
  SpectralField spec;
  spec.base_grid = f.grid;
  spec.wavenumbers = wavenumber_lattice(f.grid);
  spec.coefficients = f.values;
  row_to_spectrum(spec.coefficients.data(), plan, f.grid.spacing());
  return sobolev_norm(spec, s, homogeneous);
}

}  // namespace gkdv
