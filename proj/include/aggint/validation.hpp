#ifndef AGGINT_VALIDATION_HPP_
#define AGGINT_VALIDATION_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace aggint {

// strict uses the full sample sizes; fast shrinks them and widens the purely
// statistical tolerances by sqrt(strict_n / fast_n).
enum class ToleranceProfile { strict, fast };
ToleranceProfile profile_from_string(const std::string& name);
std::string to_string(ToleranceProfile profile);

struct CheckResult {
  std::string id;
  std::string title;
  bool passed = false;
  // Extra diagnostics that do not count towards the verdict.
  bool informational = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

struct ValidationOptions {
  ToleranceProfile profile = ToleranceProfile::strict;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

// Runs the cross-check suite (closed form vs numeric vs Monte Carlo) in
// order, calling `report` after each check.
std::vector<CheckResult> run_acceptance(const ValidationOptions& options,
                                        const std::function<void(const CheckResult&)>& report = {});

std::string format_check(const CheckResult& result);
bool all_passed(const std::vector<CheckResult>& results);

}  // namespace aggint

#endif  // AGGINT_VALIDATION_HPP_
