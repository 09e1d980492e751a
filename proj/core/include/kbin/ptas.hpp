#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kbin/configlp.hpp"
#include "kbin/instance.hpp"

namespace kbin {

struct SizedItem {
  ItemId id = 0;
  Rational size;
};

/// Result of a grouping step. U' is packed separately; U'' holds the
/// remaining items with their sizes rounded up.
struct Grouping {
  std::vector<ItemId> u_prime;
  std::vector<SizedItem> u_doubleprime;
  /// Groups in order, largest items first.
  std::vector<std::vector<ItemId>> groups;
};

/// Sorts by non-increasing size (ties by id) and cuts consecutive groups of
/// g items. The first group is U'; every later item is rounded up to the
/// largest size of its group.
Grouping linear_grouping(std::span<const SizedItem> items, std::size_t g);

/// Geometric grouping with parameter g >= 2: groups are filled until their
/// volume reaches g * S. All of group 1 and the smallest (l_i - l_{i-1})
/// items of each later group go to U'; the rest of group i is rounded up to
/// the largest size in group i. Every item must exceed eps * S.
Grouping geometric_grouping(std::span<const SizedItem> items, std::int64_t g, const Rational& eps,
                            const Rational& capacity);

/// Size classes of a list of sized items.
SizeClasses classes_of(std::span<const SizedItem> items);

/// First-fits k copies of every small item into the packing, copy 1 of all
/// small items first, opening bins as needed.
void add_small_items(KPacking& packing, const Instance& instance, std::span<const ItemId> small);

struct PtasResult {
  KPacking packing;
  /// Optimum of the configuration program that was solved, if any.
  std::optional<Rational> lp_value;
  /// Rounding loop iterations (kk2 only).
  std::int64_t iterations = 0;
  /// ln(V/S) / ln g + 1 (kk2 only).
  double iteration_bound = 0.0;
  /// False when an integral search stopped at its node budget.
  bool proven = true;
  std::size_t large_items = 0;
  std::size_t small_items = 0;
};

inline constexpr std::uint64_t kDefaultConfigSearchBudget = 2'000'000;

/// Linear grouping with g = ceil(n(J) eps^2), every group rounded up, and
/// the integral configuration problem solved by search.
PtasResult dlvl_kbp(const Instance& instance, int k, const Rational& eps,
                    std::uint64_t node_budget = kDefaultConfigSearchBudget);

/// Linear grouping, exact F_k on the rounded items and LP rounding. Items up
/// to max(1/n, eps) * S are small.
PtasResult kk1_kbp(const Instance& instance, int k, const Rational& eps);

/// Geometric grouping repeated while the large volume exceeds
/// S (1 + g/(g-1) ln(1/eps)). Defaults: eps = min(1/2, S/V), g = 2.
PtasResult kk2_kbp(const Instance& instance, int k, std::optional<Rational> eps = std::nullopt,
                   std::int64_t g = 2);

}  // namespace kbin
