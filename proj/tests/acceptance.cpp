// One line per acceptance criterion; exit status 0 only when all pass.
#include <cstdio>
#include <cstring>

#include "aggint/validation.hpp"

int main(int argc, char** argv) {
  aggint::ValidationOptions options;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--fast") == 0) options.profile = aggint::ToleranceProfile::fast;
  const auto results = aggint::run_acceptance(options, [](const aggint::CheckResult& r) {
    std::printf("%s\n", aggint::format_check(r).c_str());
    std::fflush(stdout);
  });
  const bool ok = aggint::all_passed(results);
  std::printf("%s\n", ok ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED");
  return ok ? 0 : 1;
}
