#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "gkdv/solver/config.hpp"

namespace gkdv {

// A canonical run: data builders, default discretization, and (when known)
// the closed-form solution used as the accuracy oracle.
struct Scenario {
  std::string name;
  SolverConfig config;
  double X = 20.0;  // initial-data extent
  std::function<double(double)> phi;                        // x >= 0
  std::function<double(double)> f;                          // t >= 0
  std::optional<std::function<double(double, double)>> exact;  // u(x,t)
  double expected_l2_tol = 1e-2;

  BoundaryProblem make_problem(int phi_nodes = 2049, int f_nodes = 0) const;
};

// Traveling-wave solution of d_t u + d_x^3 u + u d_x u = 0:
//   u = 3c sech^2( (sqrt(c)/2)(x - c t - x0) ).
Scenario soliton_k1(double c, double x0);

// Traveling-wave solution of d_t u + d_x^3 u + u^2 d_x u = 0:
//   u = sqrt(6c) sech( sqrt(c)(x - c t - x0) ).
Scenario soliton_k2(double c, double x0);

// Gaussian pulse released toward the boundary with f == 0 (the mass-decay
// run) or a compatible constant-trace boundary condition.
Scenario gaussian_decay(double amplitude, double center, double width, int k);

// Boundary data equal to the free trace S(t) phi_ext |_{x=0}, so the selected
// forcing vanishes in the linear problem: a regression anchor.
Scenario compatible_trace(double amplitude, double center, double width, int k, double s);

// Pure boundary-driver: phi = 0, f(t) = a sin(omega t).
Scenario boundary_sine(double amplitude, double omega);

// Name -> builder with default parameters, overridable by key=value params.
Scenario build_scenario(const std::string& name, const std::map<std::string, double>& params);
std::vector<std::string> scenario_names();

}  // namespace gkdv
