#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kbin/rational.hpp"

namespace kbin {

/// Raised when an enumeration or search would exceed its configured cap.
class CapacityExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using ItemId = std::int32_t;

/// Multiset of items with positive sizes and a bin capacity.
/// Item ids are positions in `sizes()`.
class Instance {
 public:
  Instance(std::vector<Rational> sizes, Rational capacity);

  static Instance from_integers(std::span<const std::int64_t> sizes, std::int64_t capacity);

  const std::vector<Rational>& sizes() const { return sizes_; }
  const Rational& size(ItemId id) const { return sizes_.at(static_cast<std::size_t>(id)); }
  const Rational& capacity() const { return capacity_; }
  std::size_t count() const { return sizes_.size(); }

 private:
  std::vector<Rational> sizes_;
  Rational capacity_;
};

/// Integer image of an instance: every size and the capacity multiplied by
/// a common scale so comparisons stay exact in 64-bit arithmetic.
struct IntegerInstance {
  std::vector<std::int64_t> sizes;
  std::int64_t capacity = 0;
  BigInt scale = 1;

  std::size_t count() const { return sizes.size(); }
};

/// Throws std::overflow_error when the scaled total volume would not fit in
/// 62 bits.
IntegerInstance to_integer(const Instance& instance);

struct ItemCopy {
  ItemId item = 0;
  std::int32_t copy = 1;  // 1-based copy index

  friend bool operator==(const ItemCopy&, const ItemCopy&) = default;
};

struct Bin {
  std::vector<ItemCopy> contents;
};

struct KPacking {
  int k = 1;
  std::vector<Bin> bins;

  std::size_t bin_count() const { return bins.size(); }
};

Rational load(const Bin& bin, const Instance& instance);

struct Violation {
  enum class Kind { Overfull, DuplicateItem, WrongCopyCount, UnknownItem, BadCopyIndex };
  Kind kind;
  std::size_t bin = 0;  // bin index, unused for WrongCopyCount
  ItemId item = -1;
  std::string detail;
};

std::string to_string(Violation::Kind kind);

/// Every breach of the k-packing invariants; empty means the packing is valid.
std::vector<Violation> validate(const Instance& instance, const KPacking& packing);

/// D_k: k concatenated copies of the items in instance order.
std::vector<ItemCopy> replicate(const Instance& instance, int k);

Rational volume(std::span<const Rational> sizes);
inline Rational volume(const Instance& instance) { return volume(instance.sizes()); }

/// Distinct sizes in decreasing order with their multiplicities.
struct SizeClasses {
  std::vector<Rational> sizes;
  std::vector<std::int64_t> counts;
  /// Item ids of each class in ascending order.
  std::vector<std::vector<ItemId>> members;

  std::size_t m() const { return sizes.size(); }
};

SizeClasses size_classes(const Instance& instance);

/// max(ceil(k * V / S), k) for a nonempty instance.
std::int64_t bin_lower_bound(const Instance& instance, int k);

/// Throws std::invalid_argument when k < 1.
void require_k(int k);

}  // namespace kbin
