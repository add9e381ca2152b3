#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gkdv/core/transform.hpp"
#include "gkdv/fractional/riemann_liouville.hpp"
#include "gkdv/linear/duhamel.hpp"
#include "gkdv/linear/forcing.hpp"

using namespace gkdv;

namespace {

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

template <typename F>
double time_ms(F&& f, int reps = 3) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const double t0 = now_ms();
    f();
    best = std::min(best, now_ms() - t0);
  }
  return best;
}

void set_threads(int n) {
#ifdef _OPENMP
  omp_set_num_threads(n);
#else
  (void)n;
#endif
}

}  // namespace

int main() {
  int max_threads = 1;
#ifdef _OPENMP
  max_threads = omp_get_max_threads();
#endif
  std::printf("kernel benchmarks (serial reference vs OpenMP, max threads %d)\n\n", max_threads);
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> U(-1.0, 1.0);

  {
    const int n = 2048;
    const Grid1D box = Grid1D::periodic_box(16.0, n);
    SampledFunction f(box, DomainTag::space);
    for (auto& v : f.values) v = cplx{U(rng), U(rng)};
    const double t_ref = time_ms([&] { (void)reference::dft(f); }, 2);
    const double t_fft = time_ms([&] { (void)forward_transform(f); }, 5);
    std::printf("transform n=%d         reference dft %8.2f ms   radix-2 fft %8.3f ms   (x%.0f)\n",
                n, t_ref, t_fft, t_ref / t_fft);
  }

  {
    const int n = 8192;
    const Grid1D tg(0.0, 2.0, n);
    SampledFunction h = SampledFunction::from_real(tg, DomainTag::time, [](double t) {
      return t * std::exp(-t) * (1.0 + 0.3 * std::sin(9.0 * t));
    });
    set_threads(1);
    const double t1 = time_ms([&] { (void)riemann_liouville(h, 2.0 / 3.0); }, 2);
    set_threads(max_threads);
    const double tn = time_ms([&] { (void)riemann_liouville(h, 2.0 / 3.0); }, 2);
    std::printf("riemann_liouville n=%d  1 thread %8.2f ms   %d threads %8.2f ms   (x%.2f)\n", n,
                t1, max_threads, tn, t1 / tn);
  }

  {
    const int nt = 1024, nx = 64;
    const Grid1D tg(0.0, 1.0, nt);
    const Grid1D xg(0.25, 0.25 + (nx - 1) * 0.05, nx);
    SampledFunction h =
        SampledFunction::from_real(tg, DomainTag::time, [](double t) { return std::sin(3.0 * t); });
    set_threads(1);
    const double t1 = time_ms([&] { (void)forcing_term(h, xg, tg); }, 2);
    set_threads(max_threads);
    const double tn = time_ms([&] { (void)forcing_term(h, xg, tg); }, 2);
    std::printf("forcing_term %dx%d    1 thread %8.2f ms   %d threads %8.2f ms   (x%.2f)\n", nx,
                nt, t1, max_threads, tn, t1 / tn);
  }

  {
    const int nx = 2048, nt = 1025;
    const Grid1D box = Grid1D::periodic_box(20.0, nx);
    const Grid1D tg(0.0, 1.0, nt);
    PropagatorPlan plan(box);
    SpectralRows src(box, tg);
    for (auto& v : src.coef) v = cplx{U(rng), U(rng)};
    set_threads(1);
    const double t1 = time_ms([&] { (void)duhamel_rows(plan, src); }, 2);
    set_threads(max_threads);
    const double tn = time_ms([&] { (void)duhamel_rows(plan, src); }, 2);
    std::printf("duhamel_rows %dx%d  1 thread %8.2f ms   %d threads %8.2f ms   (x%.2f)\n", nx, nt,
                t1, max_threads, tn, t1 / tn);
  }

  {
    const int nx = 2048, nt = 4096;
    const Grid1D box = Grid1D::periodic_box(20.0, nx);
    const Grid1D tg = Grid1D::periodic_box(15.0, nt);
    PropagatorPlan plan(box);
    SampledFunction f(box, DomainTag::space);
    for (auto& v : f.values) v = cplx{U(rng), U(rng)};
    set_threads(1);
    const double t1 = time_ms([&] { (void)group_trace(plan, f, tg, true); }, 2);
    set_threads(max_threads);
    const double tn = time_ms([&] { (void)group_trace(plan, f, tg, true); }, 2);
    std::printf("group_trace %dx%d   1 thread %8.2f ms   %d threads %8.2f ms   (x%.2f)\n", nx, nt,
                t1, max_threads, tn, t1 / tn);
  }
  return 0;
}
