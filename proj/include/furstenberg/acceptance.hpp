#pragma once

// The acceptance suite: ten pass/fail criteria over seeded random samples,
// each with its tolerance fixed in acceptance.cpp.

#include <cstdint>
#include <string>
#include <vector>

namespace furstenberg {

inline constexpr std::uint64_t kAcceptanceSeed = 20240917;

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<CriterionResult> run_acceptance(std::uint64_t seed = kAcceptanceSeed);

/// "[PASS] 3 name: detail" / "[FAIL] ...".
std::string format_result(const CriterionResult& result);

}  // namespace furstenberg
