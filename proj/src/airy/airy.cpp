#include "gkdv/airy/airy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gkdv {

namespace {

constexpr double kAi0 = 0.3550280538878172392600632;    // 3^{-2/3}/Gamma(2/3)
constexpr double kAip0 = -0.2588194037928067984051836;  // -3^{-1/3}/Gamma(1/3)

// One Taylor step of w'' = (y0 + tau) w from tau = 0 to tau = h.
// Coefficients obey (m+1)(m+2) c_{m+2} = y0 c_m + c_{m-1}.
void taylor_step(double y0, double w0, double w1, double h, double eps, double& out_w,
                 double& out_wp) {
  double cm1 = 0.0;  // c_{m-1}
  double c0 = w0, c1 = w1;
  double hw = w0 + h * w1;
  double hwp = w1;
  double hm = h;  // h^m with m tracking c_{m+1}
  int quiet = 0;  // the series has structural zeros (every third coefficient
                  // when y0 = 0), so exit only after a run of negligible terms
  for (int m = 0; m < 260; ++m) {
    const double c2 = (y0 * c0 + cm1) / ((m + 1.0) * (m + 2.0));
    hm *= h;  // h^{m+2}
    const double term = c2 * hm;
    hw += term;
    hwp += c2 * (m + 2.0) * hm / h;
    cm1 = c0;
    c0 = c1;
    c1 = c2;
    if (std::abs(term) < eps * (std::abs(hw) + 1e-300) &&
        std::abs(c2 * (m + 2.0) * hm / h) < eps * (std::abs(hwp) + 1e-300)) {
      if (++quiet >= 6) break;
    } else {
      quiet = 0;
    }
  }
  out_w = hw;
  out_wp = hwp;
}

// u_k = Gamma(3k+1/2) / (54^k k! Gamma(k+1/2)); v_k = (6k+1)/(1-6k) u_k.
double asym_u(int k, double prev) {
  const double kk = k;
  return prev * (3.0 * kk + 2.5) * (3.0 * kk + 1.5) * (3.0 * kk + 0.5) /
         (54.0 * (kk + 1.0) * (kk + 0.5));
}

void asym_pos(double y, double& ai, double& aip) {
  const double zeta = (2.0 / 3.0) * std::pow(y, 1.5);
  double su = 0.0, sv = 0.0, u = 1.0, powz = 1.0;
  double prev_term = 1e300;
  for (int k = 0; k <= 24; ++k) {
    const double tu = u / powz;
    if (std::abs(tu) > prev_term) break;  // past the smallest term
    su += (k & 1) ? -tu : tu;
    const double v = u * (6.0 * k + 1.0) / (1.0 - 6.0 * k);
    sv += (k & 1) ? -(v / powz) : (v / powz);
    prev_term = std::abs(tu);
    u = asym_u(k, u);
    powz *= zeta;
  }
  const double root = std::sqrt(std::numbers::pi);
  const double e = std::exp(-zeta);
  ai = e * su / (2.0 * root * std::pow(y, 0.25));
  aip = -e * std::pow(y, 0.25) * sv / (2.0 * root);
}

void asym_neg(double y, double& ai, double& aip) {
  const double t = -y;
  const double zeta = (2.0 / 3.0) * std::pow(t, 1.5);
  const double phase = zeta - 0.25 * std::numbers::pi;
  const double c = std::cos(phase), s = std::sin(phase);
  // Even/odd splits of the u_k and v_k series.
  double ue = 0.0, uo = 0.0, ve = 0.0, vo = 0.0;
  double u = 1.0, powz = 1.0;
  for (int k = 0; k <= 24; ++k) {
    const double tu = u / powz;
    const double tv = tu * (6.0 * k + 1.0) / (1.0 - 6.0 * k);
    const int q = k / 2;
    if ((k & 1) == 0) {
      ue += (q & 1) ? -tu : tu;
      ve += (q & 1) ? -tv : tv;
    } else {
      uo += (q & 1) ? -tu : tu;
      vo += (q & 1) ? -tv : tv;
    }
    u = asym_u(k, u);
    powz *= zeta;
  }
  const double root = std::sqrt(std::numbers::pi);
  ai = (c * ue + s * uo) / (root * std::pow(t, 0.25));
  aip = std::pow(t, 0.25) * (s * ve - c * vo) / root;
}

}  // namespace

void AiryEvaluator::ai_pair(double y, double& ai, double& aip) const {
  if (std::isnan(y)) throw std::invalid_argument("AiryEvaluator: NaN argument");
  const double eps = target_precision * 1e-4;
  if (std::abs(y) <= switchover_radius) {
    taylor_step(0.0, kAi0, kAip0, y, eps, ai, aip);
    return;
  }
  if (y >= asymptotic_radius) {
    if (y > 120.0) {  // e^{-zeta} below double range
      ai = 0.0;
      aip = 0.0;
      return;
    }
    asym_pos(y, ai, aip);
    return;
  }
  if (y > 0.0) {
    // Downward march from an asymptotic seed: the decaying solution grows in
    // the marching direction, so roundoff stays controlled.
    const double seed = asymptotic_radius + 2.5;
    double w, wp, station = seed;
    asym_pos(seed, w, wp);
    while (station - y > 0.5) {
      double nw, nwp;
      taylor_step(station, w, wp, -0.5, eps, nw, nwp);
      w = nw;
      wp = nwp;
      station -= 0.5;
    }
    taylor_step(station, w, wp, y - station, eps, ai, aip);
    return;
  }
  if (y <= -asymptotic_radius) {
    asym_neg(y, ai, aip);
    return;
  }
  // Oscillatory bridge: march outward from the series edge.
  double w, wp, station = -switchover_radius;
  taylor_step(0.0, kAi0, kAip0, station, eps, w, wp);
  while (y - station < -0.5) {
    double nw, nwp;
    taylor_step(station, w, wp, -0.5, eps, nw, nwp);
    w = nw;
    wp = nwp;
    station -= 0.5;
  }
  taylor_step(station, w, wp, y - station, eps, ai, aip);
}

double AiryEvaluator::ai(double y) const {
  double a, ap;
  ai_pair(y, a, ap);
  return a;
}

double AiryEvaluator::A(double x) const {
  if (std::isnan(x)) throw std::invalid_argument("airy_A: NaN argument");
  static const double cbrt3 = std::cbrt(3.0);
  return (2.0 * std::numbers::pi / cbrt3) * ai(x / cbrt3);
}

double airy_A(double x) {
  static const AiryEvaluator eval;
  return eval.A(x);
}

double constant_CA() {
  static const double ca = airy_A(0.0);
  return ca;
}

}  // namespace gkdv
