#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gkdv {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // measured values against thresholds
};

// Individual acceptance criteria (ids match the numbering in the README).
CriterionResult check_fractional_semigroup();   // 1
CriterionResult check_forcing_inversion();      // 2
CriterionResult check_airy_constant();          // 3
CriterionResult check_trace_formula();          // 4
CriterionResult check_local_smoothing();        // 5
CriterionResult check_boundary_recovery();      // 6
CriterionResult check_soliton_k1();             // 7a
CriterionResult check_soliton_k2();             // 7b
CriterionResult check_mass_decay();             // 8
CriterionResult check_scaling_covariance();     // 9
CriterionResult check_determinism();            // 10

// suite: fractional | airy | linear | solver | all
std::vector<CriterionResult> run_suite(const std::string& suite);
bool known_suite(const std::string& suite);

// One pass/fail line per criterion; returns true when everything passed.
bool print_results(const std::vector<CriterionResult>& results, std::ostream& os);

}  // namespace gkdv
