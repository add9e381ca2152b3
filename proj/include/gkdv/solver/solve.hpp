#pragma once

#include "gkdv/linear/duhamel.hpp"
#include "gkdv/solver/config.hpp"

namespace gkdv {

// Resolved discretization for a problem: the periodic box, its propagator
// plan and the data re-sampled onto the box lattice.
struct SolveSetup {
  Grid1D box;
  double data_band = 0.0;
  double safe_horizon = 0.0;
  bool wraparound_warning = false;
  SampledFunction phi_box;  // initial data on [0, X] at box spacing
};

SolveSetup resolve_setup(const BoundaryProblem& problem);

// Boundary forcing for the window [0, T0]:
//   h = Psi3 * (1/(C_A Gamma(2/3))) I_{-2/3}( Psi1 (f_ext - S(t)phi_ext|_0) ),
// supported in [0, 2T0]. `strict` enforces the vanishing-trace condition of
// the fractional inversion at the tolerance of fractional_derivative; the
// window-chained solver instead projects the (tolerance-level) corner
// mismatch onto a decaying profile and records it.
SampledFunction select_forcing(const BoundaryProblem& problem, double T0);

// Linear homogeneous quarter-plane solve on the window [0, 2 T0]:
//   w = Psi2 { forcing Duhamel of the selected h + S(t) phi_ext }.
// Boundary and initial traces are recovered on [0, T0].
SpaceTimeField solve_linear_homogeneous(const BoundaryProblem& problem, double T0);

// Linear inhomogeneous solve with zero initial and boundary traces:
// w = Psi w1 - (boundary-forcing field canceling w1's x = 0 trace),
// w1 the plain Duhamel integral of the source.
SpaceTimeField solve_linear_inhomogeneous(const SpaceTimeField& source, double T0,
                                          const SolverConfig& config);

// Nonlinear solve by Picard iteration on the Duhamel integral equation,
// window-chained up to config.T. Returns the field on [0,T] x box and the
// per-run diagnostics.
std::pair<SpaceTimeField, RunReport> solve_nonlinear(const BoundaryProblem& problem);

// u_lambda(x,t) = lambda^2 u(lambda x, lambda^3 t) data transform (k = 1):
// phi_l(x) = l^2 phi(l x), f_l(t) = l^2 f(l^3 t), horizon T/l^3. Grids are
// rescaled node-for-node, so pullback comparisons need no interpolation.
BoundaryProblem rescale_problem(const BoundaryProblem& problem, double lambda);

}  // namespace gkdv
