#pragma once

#include <limits>
#include <stdexcept>
#include <vector>

#include "gkdv/core/sampled.hpp"

namespace gkdv {

struct SolverConfig {
  int k = 1;          // nonlinearity power: d_t u + d_x^3 u + u^k d_x u = 0
  double s = 0.0;     // regularity index, in [0,1] \ {1/2}
  double T = 1.0;     // target horizon
  double L = 0.0;     // box half-width; 0 = size from the data band
  int n_x = 0;        // box nodes (power of two); 0 = from dx_target
  int n_t = 2048;     // global time nodes on [0, T]
  double picard_tol = 1e-8;
  int picard_max_iter = 25;
  double window_T0 = 0.5;     // local contraction window cap
  double compat_tol = 1e-6;   // corner-compatibility tolerance for s > 1/2
  double nonlinear_coefficient = 1.0;  // 0 turns the equation linear

  // Discretization/heuristic knobs (the theory leaves the constants free).
  double extension_width = 4.0;   // reflection window of the half-line extension
  double sponge_strength = 2000.0;  // absorbing-layer damping rate at the box edge (0 = off)
  double dx_target = 0.02;
  double window_constant = 50.0; // T0 heuristic: c/(1 + data_norm)^p
  int max_window_halvings = 4;
  int max_n_x = 8192;
  double max_L = 150.0;

  void validate() const {
    if (k < 1) throw std::invalid_argument("SolverConfig: k must be a positive integer");
    if (s < 0.0 || s > 1.0 || s == 0.5)
      throw std::invalid_argument("SolverConfig: s must lie in [0,1] with s != 1/2");
    if (!(T > 0.0)) throw std::invalid_argument("SolverConfig: T must be positive");
    if (!(window_T0 > 0.0) || window_T0 > T)
      throw std::invalid_argument("SolverConfig: need 0 < window_T0 <= T");
    if (!(picard_tol > 0.0)) throw std::invalid_argument("SolverConfig: picard_tol must be > 0");
    if (picard_max_iter < 1)
      throw std::invalid_argument("SolverConfig: picard_max_iter must be >= 1");
    if (n_t < 16) throw std::invalid_argument("SolverConfig: n_t too small");
  }

  // Regularity floor of the local theory for this k (warn-only below it).
  double theory_s_floor() const {
    if (k == 1) return 0.0;
    if (k == 2) return 0.25;
    if (k == 3) return 1.0 / 12.0;
    return 0.5 - 2.0 / k;
  }
};

struct BoundaryProblem {
  SampledFunction phi;  // initial data on [0, X]
  SampledFunction f;    // boundary data on [0, T]
  SolverConfig config;

  void validate() const {
    config.validate();
    phi.require_finite("BoundaryProblem.phi");
    f.require_finite("BoundaryProblem.f");
    if (phi.tag != DomainTag::space || f.tag != DomainTag::time)
      throw std::invalid_argument("BoundaryProblem: phi must be space data, f time data");
    if (config.s > 0.5) {
      const double gap = std::abs(phi.values[0] - f.values[0]);
      if (gap > config.compat_tol * (1.0 + phi.max_abs()))
        throw std::invalid_argument(
            "BoundaryProblem: compatibility f(0) = phi(0) violated for s > 1/2");
    }
  }
};

struct RunReport {
  std::vector<double> time;            // solved global time nodes
  std::vector<double> boundary_error;  // |u(0,t) - f(t)|
  std::vector<double> mass;            // Int_{x>0} u^2 dx
  std::vector<double> energy_residual; // balance-identity relative imbalance
  std::vector<int> picard_iters;       // per window
  std::vector<double> window_starts;
  std::vector<double> residual_history;  // increments of the last window
  bool converged = false;

  double compat_projection = 0.0;  // largest corner mismatch projected out
  bool wraparound_warning = false;
  bool regularity_warning = false;  // s below the theory floor for this k
  double safe_horizon = std::numeric_limits<double>::infinity();
  double box_half_width = 0.0;
  double data_band = 0.0;
  int n_x_used = 0;
  double airy_constant = 0.0;  // C_A used by the forcing inversion
};

// Thrown when Picard iteration fails to contract after window shrinking.
struct NonConvergenceError : std::runtime_error {
  std::vector<double> residual_history;
  explicit NonConvergenceError(const std::string& what, std::vector<double> hist)
      : std::runtime_error(what), residual_history(std::move(hist)) {}
};

}  // namespace gkdv
