#include "kbin/first_fit.hpp"

#include <limits>

namespace kbin {

namespace {
constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
constexpr std::int64_t kClosed = -1;
}  // namespace

FirstFitPacker::FirstFitPacker(std::int64_t capacity, std::size_t item_count)
    : capacity_(capacity), item_count_(item_count), words_per_bin_((item_count + 63) / 64) {
  leaves_ = 16;
  tree_.assign(2 * leaves_, kClosed);
}

void FirstFitPacker::add_bin(const Bin& bin, std::span<const std::int64_t> sizes) {
  std::size_t b = open_bin();
  for (const auto& c : bin.contents) {
    residual_[b] -= sizes[static_cast<std::size_t>(c.item)];
    mark(b, c.item);
  }
  bins_[b] = bin;
  update(b);
}

std::size_t FirstFitPacker::place(ItemCopy copy, std::int64_t size) {
  std::size_t from = 0;
  while (true) {
    std::size_t b = find_first(from, size);
    if (b == npos) break;
    if (!holds(b, copy.item)) {
      bins_[b].contents.push_back(copy);
      residual_[b] -= size;
      mark(b, copy.item);
      update(b);
      return b;
    }
    from = b + 1;
  }
  std::size_t b = open_bin();
  bins_[b].contents.push_back(copy);
  residual_[b] -= size;
  mark(b, copy.item);
  update(b);
  return b;
}

std::size_t FirstFitPacker::open_bin() {
  std::size_t b = bins_.size();
  bins_.emplace_back();
  residual_.push_back(capacity_);
  membership_.resize(membership_.size() + words_per_bin_, 0);
  if (b >= leaves_) {
    std::size_t grown = leaves_;
    while (grown <= b) grown *= 2;
    std::vector<std::int64_t> tree(2 * grown, kClosed);
    for (std::size_t i = 0; i < residual_.size(); ++i) tree[grown + i] = residual_[i];
    for (std::size_t i = grown - 1; i >= 1; --i) tree[i] = std::max(tree[2 * i], tree[2 * i + 1]);
    tree_ = std::move(tree);
    leaves_ = grown;
  }
  update(b);
  return b;
}

void FirstFitPacker::update(std::size_t bin) {
  std::size_t node = leaves_ + bin;
  tree_[node] = residual_[bin];
  for (node /= 2; node >= 1; node /= 2) {
    tree_[node] = std::max(tree_[2 * node], tree_[2 * node + 1]);
  }
}

std::size_t FirstFitPacker::find_first(std::size_t from, std::int64_t size) const {
  if (from >= bins_.size() || tree_[1] < size) return npos;
  // Climb from the leaf until a right sibling holds enough room, then take
  // the leftmost qualifying leaf below it.
  std::size_t node = leaves_ + from;
  if (tree_[node] < size) {
    while (true) {
      if (node == 1) return npos;
      if (node % 2 == 0 && tree_[node + 1] >= size) {
        node = node + 1;
        break;
      }
      node /= 2;
    }
    while (node < leaves_) node = tree_[2 * node] >= size ? 2 * node : 2 * node + 1;
  }
  std::size_t bin = node - leaves_;
  return bin < bins_.size() ? bin : npos;
}

bool FirstFitPacker::holds(std::size_t bin, ItemId item) const {
  auto idx = static_cast<std::size_t>(item);
  return (membership_[bin * words_per_bin_ + idx / 64] >> (idx % 64)) & 1U;
}

void FirstFitPacker::mark(std::size_t bin, ItemId item) {
  auto idx = static_cast<std::size_t>(item);
  membership_[bin * words_per_bin_ + idx / 64] |= std::uint64_t{1} << (idx % 64);
}

}  // namespace kbin
