#pragma once

#include <cstdint>
#include <vector>

#include "kbin/instance.hpp"

namespace kbin::detail {

// One queue per size class: copy 1 of every member (ids ascending), then
// copy 2, up to copy k.
class CopyQueues {
 public:
  CopyQueues(const SizeClasses& classes, int k) : classes_(classes), k_(k), pos_(classes.m(), 0) {}

  // Moves up to `count` entries of class `cls` into `bin`; returns how many.
  std::int64_t take(std::size_t cls, std::int64_t count, Bin& bin) {
    const auto& members = classes_.members[cls];
    const auto n = static_cast<std::int64_t>(members.size());
    std::int64_t taken = 0;
    while (taken < count && pos_[cls] < n * k_) {
      std::int64_t p = pos_[cls]++;
      bin.contents.push_back({members[static_cast<std::size_t>(p % n)], static_cast<std::int32_t>(p / n + 1)});
      ++taken;
    }
    return taken;
  }

  Bin take_config(const std::vector<std::int64_t>& config) {
    Bin bin;
    for (std::size_t i = 0; i < config.size(); ++i) {
      if (config[i] > 0) take(i, config[i], bin);
    }
    return bin;
  }

  bool empty() const {
    for (std::size_t i = 0; i < pos_.size(); ++i) {
      if (pos_[i] < static_cast<std::int64_t>(classes_.members[i].size()) * k_) return false;
    }
    return true;
  }

  // Entries still queued, copy layer by copy layer, classes in order.
  std::vector<ItemCopy> remaining() const {
    std::vector<ItemCopy> out;
    for (int copy = 1; copy <= k_; ++copy) {
      for (std::size_t i = 0; i < pos_.size(); ++i) {
        const auto& members = classes_.members[i];
        const auto n = static_cast<std::int64_t>(members.size());
        for (std::int64_t t = 0; t < n; ++t) {
          if ((copy - 1) * n + t >= pos_[i]) out.push_back({members[static_cast<std::size_t>(t)], copy});
        }
      }
    }
    return out;
  }

  // Members none of whose copies has been taken yet.
  std::vector<ItemId> untouched() const {
    std::vector<ItemId> out;
    for (std::size_t i = 0; i < pos_.size(); ++i) {
      const auto& members = classes_.members[i];
      for (std::size_t t = 0; t < members.size(); ++t) {
        if (static_cast<std::int64_t>(t) >= pos_[i]) out.push_back(members[t]);
      }
    }
    return out;
  }

 private:
  const SizeClasses& classes_;
  int k_;
  std::vector<std::int64_t> pos_;
};

}  // namespace kbin::detail
