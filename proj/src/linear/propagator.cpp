#include "gkdv/linear/propagator.hpp"

#include <cmath>
#include <stdexcept>

namespace gkdv {

PropagatorPlan::PropagatorPlan(const Grid1D& grid, double safe_horizon)
    : grid_(grid), xi_(wavenumber_lattice(grid)), fft_(grid.n), safe_horizon_(safe_horizon) {
  xi3_.resize(xi_.size());
  for (size_t i = 0; i < xi_.size(); ++i) xi3_[i] = xi_[i] * xi_[i] * xi_[i];
}

void PropagatorPlan::check_horizon(double t, bool allow_beyond) const {
  if (!allow_beyond && std::abs(t) > safe_horizon_)
    throw std::invalid_argument(
        "group_apply: |t| exceeds the wraparound-safe horizon for this box; "
        "pass allow_beyond_horizon to override");
}

double wraparound_horizon(double box_half_width, double x_interest, double band) {
  if (band <= 0.0) return std::numeric_limits<double>::infinity();
  return (box_half_width - x_interest) / (3.0 * band * band);
}

SampledFunction group_apply(const PropagatorPlan& plan, const SampledFunction& f, double t,
                            bool allow_beyond_horizon) {
  if (!(f.grid == plan.grid())) throw std::invalid_argument("group_apply: grid mismatch");
  plan.check_horizon(t, allow_beyond_horizon);
  f.require_finite("group_apply");

  SampledFunction out = f;
  row_to_spectrum(out.values.data(), plan.fft(), f.grid.spacing());
  const auto& xi3 = plan.xi_cubed();
  for (int m = 0; m < f.grid.n; ++m) out.values[m] *= std::polar(1.0, t * xi3[m]);
  spectrum_to_row(out.values.data(), plan.fft(), f.grid.spacing());
  return out;
}

SampledFunction group_trace_spectrum(const SpectralField& spec, const Grid1D& tgrid) {
  const int nt = tgrid.n;
  const int nx = spec.size();
  const double dxi = spec.dxi();
  SampledFunction out(tgrid, DomainTag::time);

  // Blocks of time nodes; inside a block each mode advances by phase
  // recurrence (exact phases recomputed at block starts).
  constexpr int kBlock = 256;
#pragma omp parallel for schedule(static)
  for (int b0 = 0; b0 < nt; b0 += kBlock) {
    const int b1 = std::min(b0 + kBlock, nt);
    std::vector<cplx> acc(b1 - b0, cplx{0.0, 0.0});
    const double dt = tgrid.spacing();
    for (int m = 0; m < nx; ++m) {
      const double xi3 = spec.wavenumbers[m] * spec.wavenumbers[m] * spec.wavenumbers[m];
      const cplx c = spec.coefficients[m];
      cplx ph = std::polar(1.0, tgrid.node(b0) * xi3);
      const cplx step = std::polar(1.0, dt * xi3);
      for (int it = b0; it < b1; ++it) {
        acc[it - b0] += c * ph;
        ph *= step;
      }
    }
    for (int it = b0; it < b1; ++it) out.values[it] = acc[it - b0] * dxi;
  }
  return out;
}

SampledFunction group_trace(const PropagatorPlan& plan, const SampledFunction& f,
                            const Grid1D& tgrid, bool allow_beyond_horizon) {
  if (!(f.grid == plan.grid())) throw std::invalid_argument("group_trace: grid mismatch");
  if (!plan.grid().has_node(0.0))
    throw std::invalid_argument("group_trace: x = 0 must be a node of the box grid");
  plan.check_horizon(std::max(std::abs(tgrid.start), std::abs(tgrid.end)), allow_beyond_horizon);
  SpectralField spec = forward_transform(f, plan.fft());
  return group_trace_spectrum(spec, tgrid);
}

}  // namespace gkdv
