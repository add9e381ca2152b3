#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "gkdv/core/grid.hpp"

namespace gkdv {

using cplx = std::complex<double>;

enum class DomainTag { space, time };

// Uniform-grid samples of a complex-valued function of one variable.
struct SampledFunction {
  Grid1D grid;
  DomainTag tag = DomainTag::space;
  std::vector<cplx> values;

  SampledFunction() = default;
  SampledFunction(Grid1D g, DomainTag t) : grid(g), tag(t), values(g.n, cplx{0.0, 0.0}) {}
  SampledFunction(Grid1D g, DomainTag t, std::vector<cplx> v)
      : grid(g), tag(t), values(std::move(v)) {
    if (static_cast<int>(values.size()) != grid.n)
      throw std::invalid_argument("SampledFunction: values.length != grid.n");
  }

  int size() const { return grid.n; }

  static SampledFunction from_function(const Grid1D& g, DomainTag t,
                                       const std::function<cplx(double)>& f) {
    SampledFunction out(g, t);
    for (int i = 0; i < g.n; ++i) out.values[i] = f(g.node(i));
    return out;
  }

  static SampledFunction from_real(const Grid1D& g, DomainTag t,
                                   const std::function<double(double)>& f) {
    SampledFunction out(g, t);
    for (int i = 0; i < g.n; ++i) out.values[i] = cplx{f(g.node(i)), 0.0};
    return out;
  }

  bool all_finite() const {
    for (const cplx& v : values)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
  }

  void require_finite(const char* who) const {
    if (!all_finite()) throw std::invalid_argument(std::string(who) + ": non-finite samples");
  }

  double max_abs() const {
    double m = 0.0;
    for (const cplx& v : values) m = std::max(m, std::abs(v));
    return m;
  }
};

// u(x_i, t_n) over a space grid x a time grid, indexed [time][space].
struct SpaceTimeField {
  Grid1D xgrid;
  Grid1D tgrid;
  std::vector<cplx> values;  // row-major, one row per time node

  SpaceTimeField() = default;
  SpaceTimeField(Grid1D xg, Grid1D tg)
      : xgrid(xg), tgrid(tg), values(static_cast<size_t>(xg.n) * tg.n, cplx{0.0, 0.0}) {}

  cplx& at(int it, int ix) { return values[static_cast<size_t>(it) * xgrid.n + ix]; }
  const cplx& at(int it, int ix) const {
    return values[static_cast<size_t>(it) * xgrid.n + ix];
  }
  cplx* row(int it) { return values.data() + static_cast<size_t>(it) * xgrid.n; }
  const cplx* row(int it) const { return values.data() + static_cast<size_t>(it) * xgrid.n; }

  // Time series at a fixed grid point.
  SampledFunction trace_at(double x) const {
    const int ix = xgrid.index_of(x);
    SampledFunction out(tgrid, DomainTag::time);
    for (int it = 0; it < tgrid.n; ++it) out.values[it] = at(it, ix);
    return out;
  }

  SampledFunction snapshot(int it) const {
    SampledFunction out(xgrid, DomainTag::space);
    for (int ix = 0; ix < xgrid.n; ++ix) out.values[ix] = at(it, ix);
    return out;
  }

  bool all_finite() const {
    for (const cplx& v : values)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
  }

  double max_abs() const {
    double m = 0.0;
    for (const cplx& v : values) m = std::max(m, std::abs(v));
    return m;
  }
};

}  // namespace gkdv
