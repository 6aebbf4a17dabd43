#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rotorchan {

// Self-contained verification battery. Every numeric threshold is pinned in
// the implementation; callers only choose the level, the seed and the worker
// count for the few parallel pieces.
enum class VerifyLevel { Fast, Full };

struct CriterionResult {
  int id = 0;
  std::string name;
  bool ran = false;   // false = skipped at this level
  bool pass = false;  // meaningful only when ran
  double seconds = 0.0;
  std::string detail;  // measurements; failed sub-checks tagged [FAIL]
};

struct VerifyReport {
  VerifyLevel level = VerifyLevel::Fast;
  std::vector<CriterionResult> results;

  // True when every criterion that ran passed.
  bool all_passed() const;
};

VerifyReport run_verification(VerifyLevel level, std::uint64_t seed, int jobs);

// One fixed-width console line per criterion.
std::string format_criterion_line(const CriterionResult& r);

// Machine-readable verdicts for the CLI.
std::string verify_report_json(const VerifyReport& report);

const char* verify_level_name(VerifyLevel level);

}  // namespace rotorchan
