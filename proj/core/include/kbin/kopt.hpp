#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kbin/exact.hpp"
#include "kbin/instance.hpp"

namespace kbin {

inline constexpr std::size_t kDefaultAgentCap = 20;

struct WeightedSubset {
  std::vector<ItemId> agents;
  Rational weight;
};

struct EgalResult {
  /// Largest r such that r (1, ..., 1) is a convex combination of feasible
  /// agent-subset indicator vectors.
  Rational r_max;
  /// Maximal feasible subsets with positive weight; weights sum to one.
  std::vector<WeightedSubset> witness;
};

/// Exact r_max from a covering LP over maximal feasible subsets. Throws
/// CapacityExceeded for more than `agent_cap` agents.
EgalResult egalitarian_fraction(const Instance& instance, std::size_t agent_cap = kDefaultAgentCap);

struct KRow {
  int k = 0;
  std::int64_t opt = 0;
  /// k / opt
  Rational fraction;
  bool proven = false;
};

struct KSearchResult {
  Rational r_max;
  std::vector<KRow> table;
  std::optional<int> k_star;
  /// True when an unproven row precedes every row certified to reach r_max.
  bool inconclusive = false;
};

/// opt_kbp for k = 1..k_max and the first k whose fraction equals r_max.
/// Rows are solved on the worker pool.
KSearchResult find_optimal_k(const Instance& instance, int k_max, std::uint64_t node_budget = kDefaultNodeBudget);

/// n unit items with S = n - 1.
Instance unit_lowerbound_instance(std::int64_t n);

/// Demands [4, 2, 5, 3, 2, 1] with S = 9.
Instance k6_instance();

/// Maximal determinant of an n x n 0/1 matrix, 1 <= n <= 21.
std::int64_t a_table(int n);

}  // namespace kbin
