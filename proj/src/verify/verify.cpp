#include "gkdv/verify/verify.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "gkdv/airy/airy.hpp"
#include "gkdv/core/cutoff.hpp"
#include "gkdv/core/extension.hpp"
#include "gkdv/core/sobolev.hpp"
#include "gkdv/diagnostics/diagnostics.hpp"
#include "gkdv/fractional/gamma.hpp"
#include "gkdv/fractional/riemann_liouville.hpp"
#include "gkdv/linear/forcing.hpp"
#include "gkdv/runs/scenarios.hpp"
#include "gkdv/solver/solve.hpp"

namespace gkdv {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

double sup_abs_diff(const SampledFunction& a, const SampledFunction& b, int lo, int hi) {
  double m = 0.0;
  for (int i = lo; i <= hi; ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

double l2_halfline(const SpaceTimeField& u, int it, int i0,
                   const std::function<double(double, double)>* exact = nullptr, double t = 0.0) {
  double acc = 0.0;
  for (int ix = i0; ix < u.xgrid.n; ++ix) {
    const double w = (ix == i0 || ix == u.xgrid.n - 1) ? 0.5 : 1.0;
    double v;
    if (exact) {
      v = u.at(it, ix).real() - (*exact)(u.xgrid.node(ix), t);
    } else {
      v = std::abs(u.at(it, ix));
    }
    acc += w * v * v;
  }
  return std::sqrt(acc * u.xgrid.spacing());
}

double l2_halfline_exact(const SpaceTimeField& u, int it, int i0,
                         const std::function<double(double, double)>& exact, double t) {
  double acc = 0.0;
  for (int ix = i0; ix < u.xgrid.n; ++ix) {
    const double w = (ix == i0 || ix == u.xgrid.n - 1) ? 0.5 : 1.0;
    const double v = exact(u.xgrid.node(ix), t);
    acc += w * v * v;
  }
  return std::sqrt(acc * u.xgrid.spacing());
}

}  // namespace

CriterionResult check_fractional_semigroup() {
  CriterionResult r{1, "fractional semigroup I_{1/3} I_{1/3} = I_{2/3}"};
  auto err_at = [](double dt) {
    const int n = static_cast<int>(std::llround(1.0 / dt)) + 1;
    const Grid1D g(0.0, 1.0, n);
    const SampledFunction h = SampledFunction::from_real(
        g, DomainTag::time, [](double t) { return t * t * std::exp(-t); });
    const SampledFunction lhs = riemann_liouville(riemann_liouville(h, 1.0 / 3.0), 1.0 / 3.0);
    const SampledFunction rhs = riemann_liouville(h, 2.0 / 3.0);
    double sup = 0.0, hmax = h.max_abs();
    for (int i = 0; i < n; ++i) sup = std::max(sup, std::abs(lhs.values[i] - rhs.values[i]));
    return sup / hmax;
  };
  const double e1 = err_at(4e-3), e2 = err_at(2e-3), e3 = err_at(1e-3);
  const double order = convergence_order({{4e-3, e1}, {2e-3, e2}, {1e-3, e3}});
  r.pass = e3 < 1e-5 && order >= 1.9;
  r.detail = "sup_rel=" + fmt(e3) + " (tol 1e-5), order=" + fmt(order) + " (min 1.9)";
  return r;
}

CriterionResult check_forcing_inversion() {
  CriterionResult r{2, "forcing inversion C_A G(2/3) I_{2/3}(h) = f1 on the psi2 plateau"};
  std::mt19937 rng(20240615u);
  std::uniform_real_distribution<double> U(0.0, 1.0);

  const double T = 1.0, T0 = 0.4;
  const int n_t = 1001;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    SolverConfig cfg;
    cfg.k = 1;
    cfg.s = 0.0;
    cfg.T = T;
    cfg.n_t = n_t;
    cfg.window_T0 = T0;
    cfg.L = 24.0;
    cfg.n_x = 2048;
    const double a1 = 0.5 + U(rng), c1 = 2.0 + 5.0 * U(rng), w1 = 0.8 + 1.2 * U(rng);
    const double a2 = U(rng) - 0.5, c2 = 2.0 + 5.0 * U(rng), w2 = 0.8 + 1.2 * U(rng);
    BoundaryProblem prob;
    prob.config = cfg;
    prob.phi = SampledFunction::from_real(Grid1D(0.0, 16.0, 2049), DomainTag::space,
                                          [&](double x) {
                                            const double z1 = (x - c1) / w1, z2 = (x - c2) / w2;
                                            return a1 * std::exp(-0.5 * z1 * z1) +
                                                   a2 * std::exp(-0.5 * z2 * z2);
                                          });
    prob.f = SampledFunction(Grid1D(0.0, T, n_t), DomainTag::time);

    const SolveSetup setup = resolve_setup(prob);
    PropagatorPlan plan(setup.box, setup.safe_horizon);
    const SampledFunction phi_ext = extend_halfline(setup.phi_box, cfg.s, setup.box);
    const SpectralField phi_hat = forward_transform(phi_ext, plan.fft());

    const double dt = T / (n_t - 1);
    const int m = static_cast<int>(std::llround(T0 / dt));
    const Grid1D tl(0.0, 2.0 * m * dt, 2 * m + 1);
    const SampledFunction alpha = group_trace_spectrum(phi_hat, tl);

    // f = alpha + t * (smooth random): compatible at the corner by design.
    const double b0 = 0.6 + 0.8 * U(rng), b1 = 2.0 * U(rng) - 1.0, om = 1.0 + 4.0 * U(rng);
    for (int jt = 0; jt < n_t; ++jt) {
      const double t = jt * dt;
      prob.f.values[jt] = (jt < tl.n ? alpha.values[jt].real() : 0.0) +
                          t * (b0 + b1 * std::cos(om * t));
    }

    const SampledFunction h = select_forcing(prob, T0);
    const SampledFunction recov = riemann_liouville(h, 2.0 / 3.0);

    const CutoffTriple cuts(m * dt);
    SampledFunction f1(tl, DomainTag::time);
    double scale = 0.0;
    for (int jt = 0; jt < tl.n; ++jt) {
      f1.values[jt] = cuts.psi1(tl.node(jt)) *
                      (prob.f.values[std::min(jt, n_t - 1)] - alpha.values[jt]);
      scale = std::max(scale, std::abs(f1.values[jt]));
    }
    const double ca_g = constant_CA() * gamma_function(2.0 / 3.0);
    double sup = 0.0;
    for (int jt = 0; jt < tl.n; ++jt) {
      if (cuts.psi2(tl.node(jt)) < 1.0) continue;  // plateau only
      sup = std::max(sup, std::abs(ca_g * recov.values[jt] - f1.values[jt]));
    }
    worst = std::max(worst, sup / scale);
  }
  r.pass = worst < 1e-3;
  r.detail = "worst_rel=" + fmt(worst) + " over 20 draws (tol 1e-3)";
  return r;
}

CriterionResult check_airy_constant() {
  CriterionResult r{3, "Airy constant C_A = 2pi/(3 Gamma(2/3))"};
  const double closed = 2.0 * std::numbers::pi / (3.0 * gamma_function(2.0 / 3.0));
  const double ca = constant_CA();

  // Contour-rotated defining integral: Integral e^{i xi^3} d xi over R equals
  // 2 cos(pi/6) Integral_0^infty e^{-r^3} dr after xi = e^{i pi/6} r.
  double quad = 0.0;
  const int panels = 64, gl = 16;
  static const double gx[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                               0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                               0.9445750230732326, 0.9894009349916499};
  static const double gw[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                               0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                               0.0622535239386479, 0.0271524594117541};
  for (int p = 0; p < panels; ++p) {
    const double a = 4.0 * p / panels, b = 4.0 * (p + 1) / panels;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < gl / 2; ++i) {
      for (int sgn = -1; sgn <= 1; sgn += 2) {
        const double x = mid + sgn * half * gx[i];
        quad += gw[i] * half * std::exp(-x * x * x);
      }
    }
  }
  const double ca_quad = 2.0 * std::cos(std::numbers::pi / 6.0) * quad;

  const double err_closed = std::abs(ca - closed);
  const double err_quad = std::abs(ca - ca_quad);
  r.pass = err_closed < 1e-8 && err_quad < 1e-6;
  r.detail = "C_A=" + fmt(ca) + ", |C_A-closed|=" + fmt(err_closed) +
             " (tol 1e-8), |C_A-quad|=" + fmt(err_quad) + " (tol 1e-6)";
  return r;
}

CriterionResult check_trace_formula() {
  CriterionResult r{4, "forcing trace w(0,t) = (3/2) C_A t^{2/3} for h == 1"};
  const int n = 1001;
  const Grid1D tg(0.0, 1.0, n);
  const SampledFunction h =
      SampledFunction::from_real(tg, DomainTag::time, [](double) { return 1.0; });
  const SampledFunction w0 = forcing_trace(h, 0.0, tg);
  const double c = 1.5 * constant_CA();
  double sup = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = tg.node(i);
    if (t < 0.1) continue;
    const double exact = c * std::pow(t, 2.0 / 3.0);
    sup = std::max(sup, std::abs(w0.values[i].real() - exact) / exact);
  }
  r.pass = sup < 1e-3;
  r.detail = "sup_rel=" + fmt(sup) + " on [0.1,1] (tol 1e-3)";
  return r;
}

CriterionResult check_local_smoothing() {
  CriterionResult r{5, "local smoothing sharp constant 1/3"};
  // The identity is a whole-line statement: the windowed estimate converges
  // when (a) the draw's spectrum is smooth, so its trace decays inside the
  // window, and (b) the box is wide enough that no periodic image reaches
  // x = 0 before the window closes (group speed 3 xi^2, leftward).
  std::mt19937 rng(7151623u);
  std::normal_distribution<double> N(0.0, 1.0);

  const double Tw = 30.0;
  const double ximax = 6.0;
  const double Lbox = 0.5 * 3.0 * ximax * ximax * Tw * 1.25;  // images stay out
  const Grid1D box = Grid1D::periodic_box(Lbox, 16384);
  const Grid1D tw = Grid1D::periodic_box(Tw, 8192);  // window [-Tw, Tw)
  const SmoothCutoff window(0.55 * Tw, 0.95 * Tw);
  const SmoothCutoff band(0.5 * (ximax - 1.0) * 0.55, 0.5 * (ximax - 1.0));

  double sum_ratio = 0.0;
  const int draws = 10;
  for (int d = 0; d < draws; ++d) {
    // Smooth random amplitude over the band [1, ximax] (and its mirror).
    double a[6], b[6], c[6], e[6];
    for (int k = 0; k < 6; ++k) {
      a[k] = N(rng);
      b[k] = N(rng);
      c[k] = N(rng);
      e[k] = N(rng);
    }
    SpectralField spec;
    spec.base_grid = box;
    spec.wavenumbers = wavenumber_lattice(box);
    spec.coefficients.assign(box.n, cplx{0.0, 0.0});
    const double mid = 0.5 * (1.0 + ximax);
    for (int m = 0; m < box.n; ++m) {
      const double xi = spec.wavenumbers[m];
      const double env = band(std::abs(xi) - mid);
      if (env == 0.0) continue;
      const double th = std::numbers::pi * (std::abs(xi) - 1.0) / (ximax - 1.0);
      double re = 0.0, im = 0.0;
      for (int k = 0; k < 6; ++k) {
        const double* pr = xi > 0 ? a : c;
        const double* pi = xi > 0 ? b : e;
        re += pr[k] * std::cos(k * th);
        im += pi[k] * std::sin((k + 1) * th);
      }
      spec.coefficients[m] = env * cplx{re, im};
    }
    const double phi_l2_sq = l2_norm_spectral(spec) * l2_norm_spectral(spec);

    SampledFunction g = group_trace_spectrum(spec, tw);
    for (int i = 0; i < tw.n; ++i) g.values[i] *= window(tw.node(i));
    const double hn = sobolev_norm(g, 1.0 / 3.0, /*homogeneous=*/true);
    sum_ratio += hn * hn / phi_l2_sq;
  }
  const double mean = sum_ratio / draws;
  r.pass = mean >= 0.317 && mean <= 0.350;
  r.detail = "mean ratio=" + fmt(mean) + " target 1/3, window [0.317, 0.350]";
  return r;
}

CriterionResult check_boundary_recovery() {
  CriterionResult r{6, "linear boundary recovery, phi = 0, f = sin 2t"};
  auto run = [](int n) {
    Scenario sc = boundary_sine(1.0, 2.0);
    sc.config.n_x = n;
    sc.config.n_t = n;
    BoundaryProblem prob = sc.make_problem(257);
    const double T0 = 0.5;
    const SpaceTimeField w = solve_linear_homogeneous(prob, T0);
    const int i0 = w.xgrid.index_of(0.0);
    const double dt = prob.config.T / (prob.config.n_t - 1);
    const int keep = static_cast<int>(std::llround(T0 / dt));
    double sup = 0.0;
    for (int it = 0; it <= std::min(keep, w.tgrid.n - 1); ++it) {
      const double f = std::sin(2.0 * w.tgrid.node(it));
      sup = std::max(sup, std::abs(w.at(it, i0).real() - f));
    }
    return sup;
  };
  const double e512 = run(512), e1024 = run(1024), e2048 = run(2048);
  const double order =
      convergence_order({{1.0 / 512, e512}, {1.0 / 1024, e1024}, {1.0 / 2048, e2048}});
  r.pass = e2048 < 1e-3 && order >= 1.0;
  r.detail = "sup=" + fmt(e2048) + " at n=2048 (tol 1e-3), refinement order=" + fmt(order) +
             " (min 1.0)";
  return r;
}

namespace {

CriterionResult soliton_criterion(int which) {
  CriterionResult r{7, which == 1 ? "soliton reproduction, k = 1" : "soliton reproduction, k = 2"};
  Scenario sc = which == 1 ? soliton_k1(1.0, -10.0) : soliton_k2(1.0, -10.0);
  BoundaryProblem prob = sc.make_problem(4097);
  auto [u, rep] = solve_nonlinear(prob);
  const int i0 = u.xgrid.index_of(0.0);

  double worst = 0.0;
  for (int it = 0; it < u.tgrid.n; ++it) {
    const double t = u.tgrid.node(it);
    const double err = l2_halfline(u, it, i0, &*sc.exact, t);
    const double ref = l2_halfline_exact(u, it, i0, *sc.exact, t);
    worst = std::max(worst, err / ref);
  }
  int max_iters = 0;
  for (int iters : rep.picard_iters) max_iters = std::max(max_iters, iters);
  r.pass = worst < sc.expected_l2_tol && max_iters <= 8;
  r.detail = "worst rel L2=" + fmt(worst) + " (tol " + fmt(sc.expected_l2_tol) +
             "), picard iters max=" + std::to_string(max_iters) + " (max 8)";
  return r;
}

}  // namespace

CriterionResult check_soliton_k1() { return soliton_criterion(1); }
CriterionResult check_soliton_k2() { return soliton_criterion(2); }

CriterionResult check_mass_decay() {
  CriterionResult r{8, "mass decay and balance identity for f == 0"};
  // Fixed box across the dyadic (dx, dt) study. The imbalance refines at
  // order ~2 until it saturates at the absorbing-layer floor (a few 1e-6,
  // two orders under the tolerance); the order is measured on the
  // pre-saturation range and the tolerance at the default (finest) grids.
  auto run = [](int n_x, int n_t, double* drift_out) {
    Scenario sc = gaussian_decay(1.0, 6.0, 1.0, 1);
    sc.config.n_x = n_x;
    sc.config.n_t = n_t;
    sc.config.L = 90.0;
    BoundaryProblem prob = sc.make_problem(2049);
    auto [u, rep] = solve_nonlinear(prob);
    double drift = 0.0;
    for (size_t i = 1; i < rep.mass.size(); ++i)
      drift = std::max(drift, (rep.mass[i] - rep.mass[i - 1]) / rep.mass[0]);
    if (drift_out) *drift_out = drift;
    double imb = 0.0;
    for (double v : rep.energy_residual) imb = std::max(imb, v);
    return imb;
  };
  double drift = 0.0;
  const double imb1 = run(512, 256, nullptr);
  const double imb2 = run(1024, 512, nullptr);
  const double imb3 = run(2048, 1024, nullptr);
  const double imb_default = run(4096, 2048, &drift);
  const double order =
      convergence_order({{1.0 / 256, imb1}, {1.0 / 512, imb2}, {1.0 / 1024, imb3}});
  r.pass = drift < 1e-6 && imb_default < 1e-3 && order >= 1.0;
  r.detail = "max mass drift=" + fmt(drift) + " (tol 1e-6), imbalance=" + fmt(imb_default) +
             " (tol 1e-3), order=" + fmt(order) + " (min 1.0, pre-saturation range)";
  return r;
}

CriterionResult check_scaling_covariance() {
  CriterionResult r{9, "scaling covariance u_l(x,t) = l^2 u(l x, l^3 t), l = 1/2"};
  Scenario sc = gaussian_decay(0.75, 7.0, 1.0, 1);
  sc.config.T = 0.4;
  sc.config.window_T0 = 0.4;
  sc.config.n_t = 1025;
  sc.config.n_x = 2048;
  sc.config.L = 24.0;
  BoundaryProblem prob = sc.make_problem(2049);
  auto [u, rep] = solve_nonlinear(prob);

  const double lambda = 0.5;
  BoundaryProblem prob_l = rescale_problem(prob, lambda);
  auto [ul, rep_l] = solve_nonlinear(prob_l);

  // Node-for-node pullback: x/l and t/l^3 land exactly on the lambda grids.
  const int i0 = u.xgrid.index_of(0.0);
  const int i0l = ul.xgrid.index_of(0.0);
  const double inv_l2 = 1.0 / (lambda * lambda);
  double num = 0.0, den = 0.0;
  for (int it = 0; it < u.tgrid.n; ++it) {
    for (int ix = i0; ix < u.xgrid.n; ++ix) {
      const int ixl = i0l + (ix - i0);
      if (ixl >= ul.xgrid.n) break;
      const double pull = inv_l2 * ul.at(it, ixl).real();
      const double base = u.at(it, ix).real();
      num += (base - pull) * (base - pull);
      den += base * base;
    }
  }
  const double rel = std::sqrt(num / den);
  r.pass = rel < 5e-2;
  r.detail = "rel L2 mismatch=" + fmt(rel) + " (tol 5e-2)";
  return r;
}

CriterionResult check_determinism() {
  CriterionResult r{10, "bit-identical reruns"};
  auto run_once = []() {
    Scenario sc = gaussian_decay(0.5, 5.0, 1.0, 1);
    sc.X = 9.0;
    sc.config.T = 0.1;
    sc.config.window_T0 = 0.1;
    sc.config.n_t = 129;
    sc.config.n_x = 512;
    sc.config.L = 12.0;
    BoundaryProblem prob = sc.make_problem(513);
    auto [u, rep] = solve_nonlinear(prob);
    std::ostringstream os;
    os.precision(17);
    for (const cplx& v : u.values) os << v.real() << ',' << v.imag() << ';';
    for (double b : rep.boundary_error) os << b << ';';
    for (double m : rep.mass) os << m << ';';
    return os.str();
  };
  const std::string a = run_once();
  const std::string b = run_once();
  r.pass = (a == b);
  r.detail = r.pass ? "two in-process runs byte-identical" : "reruns differ";
  return r;
}

std::vector<CriterionResult> run_suite(const std::string& suite) {
  std::vector<CriterionResult> out;
  const bool all = suite == "all";
  if (all || suite == "fractional") out.push_back(check_fractional_semigroup());
  if (all || suite == "airy") out.push_back(check_airy_constant());
  if (all || suite == "linear") {
    out.push_back(check_trace_formula());
    out.push_back(check_local_smoothing());
  }
  if (all || suite == "solver") {
    out.push_back(check_forcing_inversion());
    out.push_back(check_boundary_recovery());
    out.push_back(check_soliton_k1());
    out.push_back(check_soliton_k2());
    out.push_back(check_mass_decay());
    out.push_back(check_scaling_covariance());
    out.push_back(check_determinism());
  }
  return out;
}

bool known_suite(const std::string& suite) {
  return suite == "all" || suite == "fractional" || suite == "airy" || suite == "linear" ||
         suite == "solver";
}

bool print_results(const std::vector<CriterionResult>& results, std::ostream& os) {
  bool ok = true;
  for (const CriterionResult& r : results) {
    os << "[criterion " << r.id << "] " << r.name << ": " << r.detail << " ... "
       << (r.pass ? "PASS" : "FAIL") << "\n";
    ok = ok && r.pass;
  }
  return ok;
}

}  // namespace gkdv
