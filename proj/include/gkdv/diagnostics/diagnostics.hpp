#pragma once

#include <string>
#include <vector>

#include "gkdv/core/sampled.hpp"

namespace gkdv {

// Interior space-time patch, away from the x = 0 source line and from any
// cutoff transition bands in t.
struct Region {
  double x_min, x_max;
  double t_min, t_max;
};

// Max-norm finite-difference residual of d_t u + d_x^3 u + coef u^k d_x u on
// the patch, 4th-order stencils, normalized by the size of the equation's
// terms on the patch.
double pde_residual(const SpaceTimeField& u, int k, const Region& patch,
                    double nonlinear_coefficient = 1.0);

// Integral_{x>0} |u|^2 dx per time node (trapezoid; equals the u^2 integral
// for real solutions).
std::vector<double> mass_series(const SpaceTimeField& u);

// Two sides of an integral identity per time node.
struct IdentityLedger {
  std::string name;
  std::vector<double> lhs;
  std::vector<double> rhs;
  std::vector<double> relative_imbalance;  // |lhs-rhs| / (1+max(|lhs|,|rhs|))
};

// Energy/mass balance for the quarter-plane problem:
//   Int u^2(t) + Int_0^t (d_x u(0))^2 - 2 Int_0^t d_x^2 u(0) f
//     - 2/(k+2) Int_0^t f^{k+2}  =  Int phi^2.
// Boundary derivatives by one-sided 4-point stencils; the cross-term sign is
// pinned by exact-solution checks in the tests.
IdentityLedger quarter_plane_balance(const SpaceTimeField& u, const SampledFunction& f,
                                    const SampledFunction& phi, int k);

// Least-squares slope of log(error) against log(resolution).
double convergence_order(const std::vector<std::pair<double, double>>& resolution_error);

}  // namespace gkdv
