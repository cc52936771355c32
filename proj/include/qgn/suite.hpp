#ifndef QGN_SUITE_HPP
#define QGN_SUITE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qgn {

struct CriterionResult {
  int index = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the twelve acceptance criteria, printing one PASS/FAIL line per
/// criterion to log. trial_scale multiplies every trial count (1.0 = full
/// run); runtime budgets are enforced only at full scale.
std::vector<CriterionResult> run_suite(double trial_scale, std::uint64_t seed, std::ostream& log);

/// True when every criterion passed.
bool suite_passed(const std::vector<CriterionResult>& results);

}  // namespace qgn

#endif
