#include "gkdv/linear/forcing.hpp"

#include <cmath>
#include <stdexcept>

#include "gkdv/airy/airy.hpp"
#include "gkdv/fractional/riemann_liouville.hpp"
#include "gkdv/linear/duhamel.hpp"

namespace gkdv {

namespace {

void check_time_grid(const SampledFunction& h, const Grid1D& tgrid) {
  if (h.tag != DomainTag::time) throw std::invalid_argument("forcing_term: h must be a time series");
  if (!(h.grid == tgrid)) throw std::invalid_argument("forcing_term: h grid must equal tgrid");
  if (std::abs(tgrid.start) > 1e-12 * tgrid.spacing())
    throw std::invalid_argument("forcing_term: tgrid must start at 0 (h supported in t >= 0)");
  h.require_finite("forcing_term");
}

// Convolution weights of the product rule for one column:
//   w(x, t_n) = sum_j c1_j h_{n-j} + c2_j h_{n-j-1}.
// Generic panels freeze the kernel at the panel endpoints. Near the source
// line the kernel sweeps through the whole Airy range inside the first few
// panels (time scale x^3), so for 0 < x <~ 18 dt^{1/3} those panels are
// integrated exactly (the cap sits where the generic rule's defect falls
// below ~1e-7, keeping the error field smooth across the seam): with
// y = x/tau^{1/3},
//   Int_panel tau^{-1/3} A d tau              = 3 x^2 [Q3](z segment),
//   Int_panel tau^{-1/3} A (tau/dt) d tau     = (3 x^5 / dt) [Q6](z segment),
// Q3(z) = Int_z^inf A(y) y^{-3} dy, Q6 likewise with y^{-6}.
struct ColumnWeights {
  std::vector<double> c1, c2;
};

double gauss16_segment(double a, double b, int pw) {
  static const double gx[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                               0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                               0.9445750230732326, 0.9894009349916499};
  static const double gw[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                               0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                               0.0622535239386479, 0.0271524594117541};
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < 8; ++i) {
    for (int sgn = -1; sgn <= 1; sgn += 2) {
      const double y = mid + sgn * half * gx[i];
      acc += gw[i] * airy_A(y) * std::pow(y, pw);
    }
  }
  return acc * half;
}

void build_column_weights(double x, double dt, int nt, const std::vector<double>& wa,
                          const std::vector<double>& wb, double x_tol, ColumnWeights& w) {
  w.c1.assign(nt, 0.0);
  w.c2.assign(nt, 0.0);
  std::vector<double> K(nt);
  K[0] = (std::abs(x) <= x_tol) ? constant_CA() : 0.0;
  for (int j = 1; j < nt; ++j) K[j] = airy_A(x / std::cbrt(j * dt));
  for (int j = 0; j + 1 < nt; ++j) {
    w.c1[j] = (wa[j] - wb[j]) * K[j];
    w.c2[j] = wb[j] * K[j + 1];
  }

  const double dt13 = std::cbrt(dt);
  const double cap_lo = 15.0 * dt13, cap_hi = 18.0 * dt13;
  if (x <= x_tol || x > cap_hi) return;
  // Feather the hand-over so the error field stays smooth in x.
  double blend = 1.0;
  if (x > cap_lo) {
    const double u = (x - cap_lo) / (cap_hi - cap_lo);
    blend = 1.0 - u * u * (3.0 - 2.0 * u);
  }

  // Exact small-x panels. March Q3/Q6 downward from z_1 = x/dt^{1/3} while
  // the kernel still sweeps fast across a panel (z_j > 1), then hand over to
  // the frozen-endpoint rule.
  const double z1 = x / dt13;
  int J = nt - 1;
  for (int j = 1; j < nt - 1; ++j) {
    if (x / std::cbrt(j * dt) < 1.0 || j > 512) {
      J = j;
      break;
    }
  }
  double q3 = 0.0, q6 = 0.0;
  {  // tail Q(z_1): A decays fast on the positive axis
    const double hi = std::max(z1 + 14.0, 16.0);
    const int segs = 24;
    for (int s = 0; s < segs; ++s) {
      const double a = z1 + (hi - z1) * s / segs, b = z1 + (hi - z1) * (s + 1) / segs;
      q3 += gauss16_segment(a, b, -3);
      q6 += gauss16_segment(a, b, -6);
    }
  }
  const double x2 = 3.0 * x * x;
  const double x5 = 3.0 * std::pow(x, 5) / dt;
  double q3_hi = 0.0, q6_hi = 0.0;  // Q at z_j (starts at z_0 = inf)
  for (int j = 0; j < J; ++j) {
    double q3_lo, q6_lo;  // Q at z_{j+1}
    if (j == 0) {
      q3_lo = q3;
      q6_lo = q6;
    } else {
      const double za = x / std::cbrt((j + 1) * dt);  // z_{j+1} < z_j
      const double zb = x / std::cbrt(j * dt);
      q3_lo = q3_hi + gauss16_segment(za, zb, -3);
      q6_lo = q6_hi + gauss16_segment(za, zb, -6);
    }
    const double I0 = x2 * (q3_lo - q3_hi);
    const double I1 = x5 * (q6_lo - q6_hi) - j * I0;
    w.c1[j] = blend * (I0 - I1) + (1.0 - blend) * w.c1[j];
    w.c2[j] = blend * I1 + (1.0 - blend) * w.c2[j];
    q3_hi = q3_lo;
    q6_hi = q6_lo;
  }
}

// One spatial column evaluated directly from the weights.
void column(const SampledFunction& h, double x, const std::vector<double>& A,
            const std::vector<double>& B, std::vector<cplx>& out, double x_tol) {
  const int nt = h.grid.n;
  ColumnWeights w;
  build_column_weights(x, h.grid.spacing(), nt, A, B, x_tol, w);
  out.assign(nt, cplx{0.0, 0.0});
  for (int n = 1; n < nt; ++n) {
    cplx acc{0.0, 0.0};
    for (int j = 0; j < n; ++j)
      acc += w.c1[j] * h.values[n - j] + w.c2[j] * h.values[n - j - 1];
    out[n] = acc;
  }
}

}  // namespace

SpaceTimeField forcing_term(const SampledFunction& h, const Grid1D& xgrid, const Grid1D& tgrid) {
  check_time_grid(h, tgrid);
  std::vector<double> A, B;
  detail::product_weights(2.0 / 3.0, tgrid.n, A, B);
  const double dt23 = std::pow(tgrid.spacing(), 2.0 / 3.0);
  for (double& a : A) a *= dt23;
  for (double& b : B) b *= dt23;

  SpaceTimeField out(xgrid, tgrid);
#pragma omp parallel for schedule(static)
  for (int ix = 0; ix < xgrid.n; ++ix) {
    std::vector<cplx> col;
    column(h, xgrid.node(ix), A, B, col, 0.25 * xgrid.spacing());
    for (int it = 0; it < tgrid.n; ++it) out.at(it, ix) = col[it];
  }
  return out;
}

SampledFunction forcing_trace(const SampledFunction& h, double x0, const Grid1D& tgrid) {
  check_time_grid(h, tgrid);
  std::vector<double> A, B;
  detail::product_weights(2.0 / 3.0, tgrid.n, A, B);
  const double dt23 = std::pow(tgrid.spacing(), 2.0 / 3.0);
  for (double& a : A) a *= dt23;
  for (double& b : B) b *= dt23;

  std::vector<cplx> col;
  column(h, x0, A, B, col, 1e-12);
  return SampledFunction(tgrid, DomainTag::time, std::move(col));
}

SpaceTimeField forcing_term_spectral(const PropagatorPlan& plan, const SampledFunction& h) {
  check_time_grid(h, h.grid);
  SpectralRows rows = dirac_duhamel_rows(plan, h);
  return to_physical(rows, plan.fft());
}

namespace {
int pad_pow2(int n) {
  int p = 2;
  while (p < 2 * n) p <<= 1;
  return p;
}
}  // namespace

ForcingKernel::ForcingKernel(const Grid1D& xgrid, const Grid1D& tgrid)
    : xg_(xgrid), tg_(tgrid), pad_(pad_pow2(tgrid.n)), plan_(pad_) {
  const int nt = tg_.n;
  const double dt = tg_.spacing();
  detail::product_weights(2.0 / 3.0, nt, wa_, wb_);
  const double dt23 = std::pow(dt, 2.0 / 3.0);
  for (double& a : wa_) a *= dt23;
  for (double& b : wb_) b *= dt23;

  // Per-column convolution weights (c1 interleaved with c2).
  kernel_.resize(2 * static_cast<size_t>(xg_.n) * nt);
  const double x_tol = 0.25 * xg_.spacing();
#pragma omp parallel for schedule(static)
  for (int ix = 0; ix < xg_.n; ++ix) {
    static thread_local ColumnWeights w;
    build_column_weights(xg_.node(ix), dt, nt, wa_, wb_, x_tol, w);
    double* dst = kernel_.data() + 2 * static_cast<size_t>(ix) * nt;
    for (int j = 0; j < nt; ++j) {
      dst[2 * j] = w.c1[j];
      dst[2 * j + 1] = w.c2[j];
    }
  }
}

SpaceTimeField ForcingKernel::field(const SampledFunction& h) const {
  if (!(h.grid == tg_)) throw std::invalid_argument("ForcingKernel: h grid mismatch");
  const int nt = tg_.n;
  const int nx = xg_.n;

  // h with the first sample zeroed, padded and transformed once. The first
  // sample's true contribution enters only through the shifted (c2) part and
  // is restored per column below.
  std::vector<cplx> H(pad_, cplx{0.0, 0.0});
  const double h0 = h.values[0].real();
  for (int j = 1; j < nt; ++j) H[j] = cplx{h.values[j].real(), 0.0};
  plan_.execute(H.data(), -1);

  SpaceTimeField out(xg_, tg_);
#pragma omp parallel for schedule(static)
  for (int ix = 0; ix < nx; ++ix) {
    static thread_local std::vector<cplx> z;
    z.assign(pad_, cplx{0.0, 0.0});
    const double* wc = kernel_.data() + 2 * static_cast<size_t>(ix) * nt;
    // Pack both convolution kernels: Re = c1_j, Im = c2_j (h is real).
    for (int j = 0; j + 1 < nt; ++j) z[j] = cplx{wc[2 * j], wc[2 * j + 1]};
    plan_.execute(z.data(), -1);
    for (int k = 0; k < pad_; ++k) z[k] *= H[k];
    plan_.execute(z.data(), +1);
    const double inv = 1.0 / pad_;
    out.at(0, ix) = cplx{0.0, 0.0};
    for (int n = 1; n < nt; ++n) {
      const double g1 = z[n].real() * inv;
      const double g2 = z[n - 1].imag() * inv;
      const double boundary = h0 * wc[2 * (n - 1) + 1];
      out.at(n, ix) = cplx{g1 + g2 + boundary, 0.0};
    }
  }
  return out;
}

}  // namespace gkdv
