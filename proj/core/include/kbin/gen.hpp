#pragma once

#include <cstdint>
#include <vector>

#include "kbin/instance.hpp"

namespace kbin {

/// Integer sizes drawn uniformly from [1, S-1] until the next draw would
/// overflow S; the remainder closes the list so the sum is exactly S.
std::vector<std::int64_t> generate_items(std::int64_t capacity, std::uint64_t seed);

struct GeneratedInstance {
  Instance instance;
  /// Item ids of each generating batch; every batch fills one bin exactly.
  std::vector<std::vector<ItemId>> certificate;
  std::int64_t opt = 0;
};

/// opt batches of generate_items, concatenated and shuffled, so that
/// OPT(D) = opt and OPT(D_k) = k opt.
GeneratedInstance generate_instance(std::int64_t capacity, std::int64_t opt, std::uint64_t seed);

/// Sizes 6 (x7), 10 (x7), 16 (x3), 34 (x10), 51 (x10) with S = 101.
Instance johnson_ff_instance();

/// The eleven-item instance with S = 1000 on which FFk uses 11 bins for k = 2.
Instance ratio1375_instance();

/// S = 1: 4 x (1/2 + d), 4 x (1/4 + 2d), 4 x (1/4 + d), 8 x (1/4 - 2d).
Instance ffd_lower_instance(const Rational& delta);

/// S = 1: y pairs (1/2, eps) in alternating order.
Instance nf_lower_instance(std::int64_t y, const Rational& eps);

/// Seed for stream `index` derived from `seed` (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace kbin
