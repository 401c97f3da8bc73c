#pragma once

// Exhaustive invariant checks on the categories for objects <= depth.

#include <cstdint>
#include <string>
#include <vector>

namespace hyperoct {

struct SuiteCheck {
  std::string name;
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
};

struct CategorySuiteResult {
  int depth = 0;
  std::vector<SuiteCheck> checks;
  [[nodiscard]] bool ok() const {
    for (const auto& c : checks)
      if (c.failed) return false;
    return true;
  }
};

CategorySuiteResult verify_category(int depth);

}  // namespace hyperoct
