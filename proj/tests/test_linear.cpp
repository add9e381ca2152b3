#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "gkdv/airy/airy.hpp"
#include "gkdv/fractional/gamma.hpp"
#include "gkdv/fractional/riemann_liouville.hpp"
#include "gkdv/linear/duhamel.hpp"
#include "gkdv/linear/forcing.hpp"
#include "gkdv/linear/propagator.hpp"

using namespace gkdv;

namespace {
constexpr double kPi = std::numbers::pi;

SampledFunction gaussian_on(const Grid1D& g, double amp, double center, double width) {
  return SampledFunction::from_real(g, DomainTag::space, [=](double x) {
    const double z = (x - center) / width;
    return amp * std::exp(-0.5 * z * z);
  });
}

double rel_l2_diff(const SampledFunction& a, const SampledFunction& b) {
  double num = 0.0, den = 0.0;
  for (int i = 0; i < a.grid.n; ++i) {
    num += std::norm(a.values[i] - b.values[i]);
    den += std::norm(b.values[i]);
  }
  return std::sqrt(num / (den + 1e-300));
}
}  // namespace

TEST_CASE("group: t = 0 is the identity; L2 is preserved; group law holds") {
  const Grid1D box = Grid1D::periodic_box(10.0, 512);
  PropagatorPlan plan(box);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  SampledFunction f(box, DomainTag::space);
  for (auto& v : f.values) v = cplx{U(rng), U(rng)};

  const SampledFunction id = group_apply(plan, f, 0.0);
  double md = 0.0;
  for (int i = 0; i < box.n; ++i) md = std::max(md, std::abs(id.values[i] - f.values[i]));
  CHECK(md < 1e-13 * f.max_abs());

  const SampledFunction g1 = group_apply(plan, f, 0.37, true);
  CHECK(l2_norm_physical(g1) == doctest::Approx(l2_norm_physical(f)).epsilon(1e-12));

  const SampledFunction g2 = group_apply(plan, g1, -0.15, true);
  const SampledFunction g3 = group_apply(plan, f, 0.22, true);
  CHECK(rel_l2_diff(g2, g3) < 2e-11);
}

TEST_CASE("group: single lattice mode picks up the phase e^{i t xi0^3}") {
  const Grid1D box = Grid1D::periodic_box(4.0, 128);
  PropagatorPlan plan(box);
  const double xi0 = kPi * 3 / 4.0;
  const SampledFunction f = SampledFunction::from_function(
      box, DomainTag::space, [xi0](double x) { return std::polar(1.0, xi0 * x); });
  const double t = 0.8;
  const SampledFunction g = group_apply(plan, f, t, true);
  const cplx phase = std::polar(1.0, t * xi0 * xi0 * xi0);
  double md = 0.0;
  for (int i = 0; i < box.n; ++i) md = std::max(md, std::abs(g.values[i] - phase * f.values[i]));
  CHECK(md < 1e-12);
}

TEST_CASE("group vs direct Airy-kernel convolution for Gaussian data") {
  const Grid1D box = Grid1D::periodic_box(24.0, 2048);
  PropagatorPlan plan(box);
  const SampledFunction phi = gaussian_on(box, 1.0, 0.0, 1.0);
  const double t = 0.5;
  const SampledFunction g = group_apply(plan, phi, t, true);

  // S(t)phi = (1/2pi) Integral t^{-1/3} A((x - x') t^{-1/3}) phi(x') dx'
  // under the adopted hat convention; composite Simpson over the box at a
  // subset of evaluation points away from the box edge.
  const double t13 = std::cbrt(t);
  double num = 0.0, den = 0.0;
  for (int ix = 0; ix < box.n; ix += 32) {
    const double x = box.node(ix);
    if (std::abs(x) > 12.0) continue;
    cplx acc{0.0, 0.0};
    const int panels = box.n - 2;  // even panel count for Simpson
    for (int j = 0; j <= panels; ++j) {
      const double w = (j == 0 || j == panels) ? 1.0 : (j & 1 ? 4.0 : 2.0);
      acc += w * airy_A((x - box.node(j)) / t13) * phi.values[j];
    }
    acc *= box.spacing() / (3.0 * t13 * 2.0 * kPi);
    num += std::norm(g.values[ix] - acc);
    den += std::norm(acc);
  }
  CHECK(std::sqrt(num / den) < 1e-4);
}

TEST_CASE("group trace: zero data, then a single mode") {
  const Grid1D box = Grid1D::periodic_box(8.0, 256);
  PropagatorPlan plan(box);
  const Grid1D tg(0.0, 1.0, 101);

  const SampledFunction zero(box, DomainTag::space);
  const SampledFunction tr0 = group_trace(plan, zero, tg, true);
  CHECK(tr0.max_abs() == 0.0);

  const double xi0 = kPi * 10 / 8.0;
  const double amp = 0.6;
  const SampledFunction mode = SampledFunction::from_function(
      box, DomainTag::space, [=](double x) { return amp * std::polar(1.0, xi0 * x); });
  const SampledFunction tr = group_trace(plan, mode, tg, true);
  double md = 0.0;
  for (int i = 0; i < tg.n; ++i) {
    const cplx expect = amp * std::polar(1.0, tg.node(i) * xi0 * xi0 * xi0);
    md = std::max(md, std::abs(tr.values[i] - expect));
  }
  CHECK(md < 1e-11);
}

TEST_CASE("wraparound horizon guard") {
  const Grid1D box = Grid1D::periodic_box(10.0, 256);
  const double horizon = wraparound_horizon(10.0, 2.0, 2.0);  // (10-2)/12
  CHECK(horizon == doctest::Approx(8.0 / 12.0));
  PropagatorPlan plan(box, horizon);
  const SampledFunction f = gaussian_on(box, 1.0, 0.0, 1.0);
  CHECK_NOTHROW(group_apply(plan, f, 0.5));
  CHECK_THROWS(group_apply(plan, f, 1.0));
  CHECK_NOTHROW(group_apply(plan, f, 1.0, /*allow_beyond_horizon=*/true));
}

TEST_CASE("forcing term: zero forcing gives the zero field") {
  const Grid1D tg(0.0, 1.0, 65);
  const Grid1D xg(0.5, 2.0, 16);
  const SampledFunction h(tg, DomainTag::time);
  const SpaceTimeField w = forcing_term(h, xg, tg);
  CHECK(w.max_abs() == 0.0);
}

TEST_CASE("forcing trace for h == 1: (3/2) C_A t^{2/3}") {
  const Grid1D tg(0.0, 1.0, 501);
  const SampledFunction h = SampledFunction::from_real(tg, DomainTag::time, [](double) { return 1.0; });
  const SampledFunction w0 = forcing_trace(h, 0.0, tg);
  const double c = 1.5 * constant_CA();
  for (int i = 0; i < tg.n; ++i) {
    const double t = tg.node(i);
    if (t < 0.05) continue;
    CHECK(w0.values[i].real() == doctest::Approx(c * std::pow(t, 2.0 / 3.0)).epsilon(2e-3));
  }
}

TEST_CASE("forcing trace consistency: w(0,t) = C_A Gamma(2/3) I_{2/3}(h)") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const Grid1D tg(0.0, 1.0, 513);
  const double cg = constant_CA() * gamma_function(2.0 / 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double a = U(rng), b = U(rng), om = 2.0 + 3.0 * U(rng);
    const SampledFunction h = SampledFunction::from_real(tg, DomainTag::time, [=](double t) {
      return a * std::sin(om * t) + b * t * std::exp(-t);
    });
    const SampledFunction w0 = forcing_trace(h, 0.0, tg);
    const SampledFunction I = riemann_liouville(h, 2.0 / 3.0);
    double sup = 0.0, scale = 0.0;
    for (int i = 0; i < tg.n; ++i) {
      sup = std::max(sup, std::abs(w0.values[i] - cg * I.values[i]));
      scale = std::max(scale, std::abs(w0.values[i]));
    }
    CHECK(sup < 1e-3 * (scale + 1e-300));
  }
}

TEST_CASE("forcing field solves the free equation away from the source line") {
  const Grid1D tg(0.0, 1.0, 513);
  const Grid1D xg(0.5, 2.1, 65);
  const SampledFunction h = SampledFunction::from_real(
      tg, DomainTag::time, [](double t) { return std::sin(3.0 * t) * (1.0 - std::exp(-5.0 * t)); });
  const SpaceTimeField w = forcing_term(h, xg, tg);

  // 4th-order finite-difference residual of d_t w + d_x^3 w on an interior
  // patch; the Dirac source lives at x = 0, outside this grid.
  const double dx = xg.spacing(), dt = tg.spacing();
  double worst = 0.0, scale = 0.0;
  for (int it = 2; it < tg.n - 2; ++it) {
    if (tg.node(it) < 0.2) continue;
    for (int ix = 3; ix < xg.n - 3; ++ix) {
      const double ut = (-w.at(it + 2, ix).real() + 8.0 * w.at(it + 1, ix).real() -
                         8.0 * w.at(it - 1, ix).real() + w.at(it - 2, ix).real()) /
                        (12.0 * dt);
      const double uxxx =
          (0.125 * w.at(it, ix - 3).real() - w.at(it, ix - 2).real() +
           1.625 * w.at(it, ix - 1).real() - 1.625 * w.at(it, ix + 1).real() +
           w.at(it, ix + 2).real() - 0.125 * w.at(it, ix + 3).real()) /
          (dx * dx * dx);
      worst = std::max(worst, std::abs(ut + uxxx));
      scale = std::max(scale, std::abs(ut) + std::abs(uxxx));
    }
  }
  CHECK(worst / scale < 1e-2);
}

TEST_CASE("fast forcing kernel matches the direct quadrature to rounding") {
  const Grid1D box = Grid1D::periodic_box(16.0, 256);
  const Grid1D tg(0.0, 0.5, 257);
  const SampledFunction h = SampledFunction::from_real(
      tg, DomainTag::time, [](double t) { return std::sin(4.0 * t) + 0.3; });
  const SpaceTimeField direct = forcing_term(h, box, tg);
  const ForcingKernel kernel(box, tg);
  const SpaceTimeField fast = kernel.field(h);
  double md = 0.0;
  const double scale = direct.max_abs();
  for (size_t i = 0; i < fast.values.size(); ++i)
    md = std::max(md, std::abs(fast.values[i] - direct.values[i]));
  CHECK(md < 1e-11 * scale);
}

TEST_CASE("periodized spectral forcing is a percent-level approximation") {
  // The spectral route periodizes the kernel over the box: its left-tail
  // images keep it within a few percent of the exact-kernel field.
  const Grid1D box = Grid1D::periodic_box(16.0, 1024);
  const Grid1D tg(0.0, 0.5, 257);
  PropagatorPlan plan(box);
  const SampledFunction h = SampledFunction::from_real(
      tg, DomainTag::time, [](double t) { return std::sin(4.0 * t); });
  const SpaceTimeField spec = forcing_term_spectral(plan, h);
  for (double x0 : {0.0, 0.75, -1.25}) {
    const SampledFunction direct = forcing_trace(h, x0, tg);
    const int ix = box.index_of(x0);
    double sup = 0.0, scale = 0.0;
    for (int it = 0; it < tg.n; ++it) {
      sup = std::max(sup, std::abs(spec.at(it, ix) - direct.values[it]));
      scale = std::max(scale, std::abs(direct.values[it]));
    }
    CHECK(sup < 5e-2 * (scale + 1e-300));
  }
}

TEST_CASE("duhamel: zero source, a time-independent mode, linearity") {
  const Grid1D box = Grid1D::periodic_box(6.0, 256);
  const Grid1D tg(0.0, 1.0, 129);
  PropagatorPlan plan(box);

  SpaceTimeField zero(box, tg);
  CHECK(duhamel_inhomogeneous(plan, zero, tg).max_abs() == 0.0);

  // h(x,t) = e^{i xi0 x}: w = e^{i xi0 x} (e^{i t xi0^3} - 1)/(i xi0^3),
  // reproduced exactly by the exponential panel rule.
  const double xi0 = kPi * 7 / 6.0;
  SpaceTimeField src(box, tg);
  for (int it = 0; it < tg.n; ++it)
    for (int ix = 0; ix < box.n; ++ix) src.at(it, ix) = std::polar(1.0, xi0 * box.node(ix));
  const SpaceTimeField w = duhamel_inhomogeneous(plan, src, tg);
  const cplx ic{0.0, 1.0};
  double md = 0.0;
  for (int it = 0; it < tg.n; ++it) {
    const cplx factor =
        (std::polar(1.0, tg.node(it) * xi0 * xi0 * xi0) - 1.0) / (ic * xi0 * xi0 * xi0);
    for (int ix = 0; ix < box.n; ix += 7)
      md = std::max(md,
                    std::abs(w.at(it, ix) - factor * std::polar(1.0, xi0 * box.node(ix))));
  }
  CHECK(md < 1e-12);

  // Linearity.
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  SpaceTimeField s1(box, tg), s2(box, tg), comb(box, tg);
  for (size_t i = 0; i < s1.values.size(); ++i) {
    s1.values[i] = cplx{U(rng), U(rng)};
    s2.values[i] = cplx{U(rng), U(rng)};
    comb.values[i] = 1.3 * s1.values[i] - 0.8 * s2.values[i];
  }
  const SpaceTimeField w1 = duhamel_inhomogeneous(plan, s1, tg);
  const SpaceTimeField w2 = duhamel_inhomogeneous(plan, s2, tg);
  const SpaceTimeField wc = duhamel_inhomogeneous(plan, comb, tg);
  double lmax = 0.0;
  for (size_t i = 0; i < wc.values.size(); ++i)
    lmax = std::max(lmax, std::abs(wc.values[i] - 1.3 * w1.values[i] + 0.8 * w2.values[i]));
  CHECK(lmax < 1e-13 * (1.0 + wc.max_abs()));
}

TEST_CASE("duhamel time quadrature is second order per mode") {
  // Single mode xi0, source a(t) = e^{-t} cos(3t); exact solution by fine
  // quadrature of the oscillatory integral.
  const double xi0 = 2.7;
  const double theta = xi0 * xi0 * xi0;
  auto exact_at = [&](double t) {
    const int n = 200000;
    cplx acc{0.0, 0.0};
    const double dt = t / n;
    for (int i = 0; i <= n; ++i) {
      const double s = i * dt;
      const double w = (i == 0 || i == n) ? 0.5 : 1.0;
      acc += w * std::polar(1.0, (t - s) * theta) * (std::exp(-s) * std::cos(3.0 * s));
    }
    return acc * dt;
  };
  const cplx ref = exact_at(1.0);

  auto etd_err = [&](int nt) {
    const Grid1D tg(0.0, 1.0, nt);
    const double dt = tg.spacing();
    const cplx E = std::polar(1.0, dt * theta);
    cplx phi1, psi;
    detail::etd_weights(-dt * theta, phi1, psi);
    cplx w{0.0, 0.0};
    for (int n = 0; n + 1 < nt; ++n) {
      const double a = std::exp(-tg.node(n)) * std::cos(3.0 * tg.node(n));
      const double b = std::exp(-tg.node(n + 1)) * std::cos(3.0 * tg.node(n + 1));
      w = E * (w + dt * (phi1 - psi) * a + dt * psi * b);
    }
    return std::abs(w - ref);
  };
  const double e1 = etd_err(65), e2 = etd_err(129), e3 = etd_err(257);
  CHECK(e2 / e1 < 0.35);
  CHECK(e3 / e2 < 0.35);
}
