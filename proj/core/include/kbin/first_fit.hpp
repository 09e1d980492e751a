#pragma once

#include <cstdint>
#include <vector>

#include "kbin/instance.hpp"

namespace kbin {

/// Incremental first-fit over integer sizes under the k-packing rule: a copy
/// goes to the lowest-index bin with enough room that holds no other copy of
/// the same item. A max-residual segment tree finds candidate bins; skipping
/// a candidate that already holds the item resumes the search right after
/// it, so the chosen bin is the same one a left-to-right scan would pick.
class FirstFitPacker {
 public:
  FirstFitPacker(std::int64_t capacity, std::size_t item_count);

  /// Appends an existing bin (e.g. produced by another stage).
  void add_bin(const Bin& bin, std::span<const std::int64_t> sizes);

  /// Places one copy and returns the bin index it went to.
  std::size_t place(ItemCopy copy, std::int64_t size);

  std::size_t bin_count() const { return bins_.size(); }
  std::int64_t load(std::size_t bin) const { return capacity_ - residual_[bin]; }
  const std::vector<Bin>& bins() const { return bins_; }
  std::vector<Bin> take_bins() { return std::move(bins_); }

 private:
  std::size_t open_bin();
  void update(std::size_t bin);
  /// Lowest index >= from whose residual is at least size, or npos.
  std::size_t find_first(std::size_t from, std::int64_t size) const;
  bool holds(std::size_t bin, ItemId item) const;
  void mark(std::size_t bin, ItemId item);

  std::int64_t capacity_;
  std::size_t item_count_;
  std::size_t words_per_bin_;
  std::vector<Bin> bins_;
  std::vector<std::int64_t> residual_;
  std::vector<std::uint64_t> membership_;
  std::size_t leaves_ = 0;
  std::vector<std::int64_t> tree_;
};

}  // namespace kbin
