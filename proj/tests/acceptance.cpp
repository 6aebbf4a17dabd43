// Acceptance battery driver: one pass/fail line per criterion, nonzero exit
// when any ran criterion fails. Level "fast" skips the long dense studies,
// "full" runs everything.
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#include <rotorchan/verify.hpp>

int main(int argc, char** argv) {
  using namespace rotorchan;

  VerifyLevel level = VerifyLevel::Fast;
  if (argc > 1) {
    if (std::strcmp(argv[1], "full") == 0) {
      level = VerifyLevel::Full;
    } else if (std::strcmp(argv[1], "fast") != 0) {
      std::fprintf(stderr, "usage: %s [fast|full] [seed]\n", argv[0]);
      return 2;
    }
  }
  std::uint64_t seed = 1;
  if (argc > 2) seed = std::strtoull(argv[2], nullptr, 10);

  VerifyReport report = run_verification(level, seed, 1);
  for (const CriterionResult& r : report.results)
    std::printf("%s\n", format_criterion_line(r).c_str());
  std::printf("ACCEPTANCE %s at level %s\n",
              report.all_passed() ? "PASS" : "FAIL",
              verify_level_name(report.level));
  return report.all_passed() ? 0 : 1;
}
