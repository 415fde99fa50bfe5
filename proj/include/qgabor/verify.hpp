#pragma once

// The acceptance suite as a library: each criterion runs its identity
// checks at the stated tolerance and reports worst residuals and runtime.
// Shared by the `verify-all` command and the acceptance test binary.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qgabor {

struct CriterionResult {
  int id = 0;
  std::string key;     // identity name, e.g. "moyal"
  bool passed = false;
  std::string detail;  // worst residuals and limits
  double seconds = 0.0;
};

struct VerifyOptions {
  std::uint64_t seed = 5150;
};

inline constexpr int kCriterionCount = 10;

CriterionResult run_criterion(int id, const VerifyOptions& options);
// Criteria 1..10 in order; each result is printed as soon as it finishes
// when `progress` is given.
std::vector<CriterionResult> run_all_criteria(const VerifyOptions& options,
                                              std::ostream* progress = nullptr);

// "[PASS]  3 janssen  (0.41 s)  detail"
std::string format_result(const CriterionResult& r);
void print_matrix(const std::vector<CriterionResult>& results, std::ostream& out);

}  // namespace qgabor
