#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace gkdv {

// Uniform one-dimensional grid. Nodes are start + i*spacing for i = 0..n-1,
// with spacing = (end - start)/(n - 1).
//
// A "periodic box" of half-width L stores one period [-L, L): the right
// endpoint +L is the wrap point and is not a node, so spacing = 2L/n and
// end = L - spacing. Spectral code relies on this layout.
struct Grid1D {
  double start = 0.0;
  double end = 1.0;
  int n = 2;

  Grid1D() = default;
  Grid1D(double s, double e, int count) : start(s), end(e), n(count) {
    if (n < 2) throw std::invalid_argument("Grid1D: need n >= 2");
    if (!(end > start)) throw std::invalid_argument("Grid1D: need end > start");
    if (!std::isfinite(start) || !std::isfinite(end))
      throw std::invalid_argument("Grid1D: non-finite bounds");
  }

  double spacing() const { return (end - start) / (n - 1); }
  double node(int i) const { return start + i * spacing(); }
  double length() const { return end - start; }

  // Period and half-width of the box this grid covers when interpreted as
  // one period of a periodic domain.
  double period() const { return n * spacing(); }
  double half_width() const { return 0.5 * period(); }

  static Grid1D periodic_box(double half_width, int n) {
    if (n < 2) throw std::invalid_argument("periodic_box: need n >= 2");
    const double dx = 2.0 * half_width / n;
    return Grid1D(-half_width, half_width - dx, n);
  }

  // Index of the node closest to x; throws if x is not a node to within tol.
  int index_of(double x, double tol = 1e-9) const {
    const double pos = (x - start) / spacing();
    const int i = static_cast<int>(std::llround(pos));
    if (i < 0 || i >= n || std::abs(pos - i) > tol)
      throw std::invalid_argument("Grid1D: " + std::to_string(x) + " is not a grid node");
    return i;
  }

  bool has_node(double x, double tol = 1e-9) const {
    const double pos = (x - start) / spacing();
    const int i = static_cast<int>(std::llround(pos));
    return i >= 0 && i < n && std::abs(pos - i) <= tol;
  }

  bool operator==(const Grid1D& o) const {
    return n == o.n && std::abs(start - o.start) <= 1e-12 * (1.0 + std::abs(start)) &&
           std::abs(end - o.end) <= 1e-12 * (1.0 + std::abs(end));
  }
};

}  // namespace gkdv
