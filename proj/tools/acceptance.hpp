#pragma once

#include <span>
#include <string>
#include <vector>

namespace patternfront::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double budget = 0.0;  // wall-clock limit in seconds
};

/// Ids 1..10.
std::vector<int> all_criteria();
CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_criteria(std::span<const int> ids);

/// "PASS [3] name: detail (0.12 s / 5 s)".
std::string format_line(const CriterionResult& r);

}  // namespace patternfront::acceptance
