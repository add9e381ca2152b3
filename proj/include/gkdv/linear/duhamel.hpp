#pragma once

#include "gkdv/core/sampled.hpp"
#include "gkdv/linear/propagator.hpp"

namespace gkdv {

// Spectral rows: one wavenumber-ascending spectrum per time node. The working
// representation inside the solution operators (fields are materialized to
// physical space only at the edges).
struct SpectralRows {
  Grid1D base_grid;
  Grid1D tgrid;
  std::vector<cplx> coef;  // [time][mode]

  SpectralRows() = default;
  SpectralRows(Grid1D xg, Grid1D tg)
      : base_grid(xg), tgrid(tg), coef(static_cast<size_t>(xg.n) * tg.n, cplx{0.0, 0.0}) {}
  cplx* row(int it) { return coef.data() + static_cast<size_t>(it) * base_grid.n; }
  const cplx* row(int it) const { return coef.data() + static_cast<size_t>(it) * base_grid.n; }
};

SpectralRows to_spectral(const SpaceTimeField& f, const FftPlan& plan);
SpaceTimeField to_physical(const SpectralRows& s, const FftPlan& plan);

// Time series of the x = 0 trace: sum_j coef(xi_j, t) dxi.
SampledFunction rows_trace_at_origin(const SpectralRows& s);

// Duhamel integral for d_t w + d_x^3 w = s with w(.,0) = 0, mode-wise:
//   w_hat(xi, t_{n+1}) = e^{i dt xi^3} [ w_hat(xi, t_n) + panel(s_hat) ],
// the panel integral exact for s_hat piecewise linear in t (order 2, exact
// for time-independent sources).
//
// `sponge` (per box node, values >= 0) switches on absorbing-layer damping:
// every `sponge_stride` steps the state is multiplied by e^{-sigma(x) tau}
// in physical space (tau the elapsed stride). Emulates an open boundary on
// the periodic box; pass nullptr for the pure evolution.
SpectralRows duhamel_rows(const PropagatorPlan& plan, const SpectralRows& source,
                          const std::vector<double>* sponge = nullptr, int sponge_stride = 8);

// Free-group rows e^{i t xi^3} phi_hat over tgrid, with the same optional
// absorbing layer.
SpectralRows group_rows(const PropagatorPlan& plan, const SpectralField& phi_hat,
                        const Grid1D& tgrid, const std::vector<double>* sponge = nullptr,
                        int sponge_stride = 8);

// Same evolution for the Dirac line source delta_0(x) h(t): every mode is
// driven by h(t)/2pi.
SpectralRows dirac_duhamel_rows(const PropagatorPlan& plan, const SampledFunction& h);

// Public operation: physical in, physical out.
SpaceTimeField duhamel_inhomogeneous(const PropagatorPlan& plan, const SpaceTimeField& source,
                                     const Grid1D& tgrid);

namespace detail {
// phi1(z) = (e^z - 1)/z and psi(z) = Integral_0^1 e^{z s} s ds, z = i*w.
void etd_weights(double w, cplx& phi1, cplx& psi);
}  // namespace detail

}  // namespace gkdv
