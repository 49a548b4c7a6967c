#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dynmahler::acceptance {

struct Options {
  std::uint64_t seed = 7;
  unsigned threads = 0;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr int kCriterionCount = 14;

// Domain errors inside a criterion count as a failure, with the message in
// detail.
CriterionResult run_criterion(int id, const Options& opts = {});
std::vector<CriterionResult> run_all(const Options& opts = {});

// "PASS  3  <title>  [seconds]  detail"
std::string format_line(const CriterionResult& r);

}  // namespace dynmahler::acceptance
