#pragma once

namespace gkdv {

// The dispersive kernel A with Fourier transform e^{i xi^3} under the
// convention phi(x) = Integral e^{i x xi} phi_hat(xi) dxi:
//   A(x) = (2 pi / 3^{1/3}) Ai(x / 3^{1/3}),
// Ai the classical Airy function. A(0) = C_A = 2 pi / (3 Gamma(2/3)).
//
// Evaluation of Ai: Maclaurin series for |y| <= switchover_radius, asymptotic
// expansions for |y| >= asymptotic_radius, and a Taylor-series ODE march
// bridging the gap (downward from the asymptotic seed on the positive side,
// where forward marching would excite the growing solution). Deterministic:
// the same argument always produces the bit-identical result.
class AiryEvaluator {
 public:
  double switchover_radius = 4.5;
  double asymptotic_radius = 9.5;
  double target_precision = 1e-12;

  // Classical Ai and Ai' (Ai'' = y Ai, Ai(0) = 3^{-2/3}/Gamma(2/3)).
  void ai_pair(double y, double& ai, double& aip) const;
  double ai(double y) const;

  // The rescaled kernel A(x); NaN input throws.
  double A(double x) const;
};

// Module-level evaluator with default settings.
double airy_A(double x);

// Cached A(0); equals airy_A(0) bit-for-bit.
double constant_CA();

}  // namespace gkdv
