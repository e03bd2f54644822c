#pragma once

#include <string>
#include <vector>

namespace av321 {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

/// Runs the full acceptance battery: exact-count identities, the subdirect
/// bijection, the dichotomy sweep, lattice laws, the main-theorem and
/// partial-reduction desk checks, and the oracle equivalences.
std::vector<CriterionResult> run_acceptance(int threads);

/// One pass/fail line per criterion.
std::string format_acceptance_line(const CriterionResult& r);

}  // namespace av321
