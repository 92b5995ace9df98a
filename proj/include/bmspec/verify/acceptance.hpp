#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace bmspec::verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// Runs criteria 1..14 in order, printing one "[PASS]"/"[FAIL]" line each as it finishes.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed, std::ostream& out, int jobs = 1);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace bmspec::verify
