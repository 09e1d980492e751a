#pragma once

#include <cstdint>

#include "kbin/instance.hpp"

namespace kbin {

inline constexpr std::uint64_t kDefaultNodeBudget = 50'000'000;

struct ExactResult {
  std::int64_t count = 0;
  KPacking packing;
  /// True iff the search space was exhausted within the node budget.
  bool proven = false;
  std::uint64_t nodes = 0;
};

/// Optimal k-packing by branch-and-bound over bins built one at a time.
/// Returns the best incumbent with proven == false when the budget runs out.
ExactResult opt_kbp(const Instance& instance, int k, std::uint64_t node_budget = kDefaultNodeBudget);

/// Classic bin packing optimum (k = 1).
ExactResult opt_bp(const Instance& instance, std::uint64_t node_budget = kDefaultNodeBudget);

}  // namespace kbin
