#include "kbin/exact.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "kbin/heuristics.hpp"

namespace kbin {

namespace {

// Remaining copies are tracked per item; items of equal size form a class
// whose block is kept sorted by (remaining desc, id asc). A bin takes the
// t items with the most remaining copies from a class, which is without
// loss of generality for interchangeable items.
class BranchAndBound {
 public:
  BranchAndBound(const IntegerInstance& inst, int k, std::uint64_t budget) : k_(k), budget_(budget) {
    capacity_ = inst.capacity;
    std::vector<ItemId> order(inst.count());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<ItemId>(i);
    std::stable_sort(order.begin(), order.end(), [&](ItemId a, ItemId b) {
      return inst.sizes[static_cast<std::size_t>(a)] > inst.sizes[static_cast<std::size_t>(b)];
    });
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      std::int64_t s = inst.sizes[static_cast<std::size_t>(order[pos])];
      if (classes_.empty() || classes_.back().size != s) classes_.push_back({s, pos, pos});
      classes_.back().end = pos + 1;
      ids_.push_back(order[pos]);
      counts_.push_back(static_cast<std::uint16_t>(k));
      volume_ += static_cast<__int128>(s) * k;
    }
  }

  void seed_incumbent(const KPacking& packing) {
    best_ = static_cast<std::int64_t>(packing.bins.size());
    best_path_.clear();
    for (const auto& bin : packing.bins) {
      std::vector<ItemId> ids;
      for (const auto& c : bin.contents) ids.push_back(c.item);
      best_path_.push_back(std::move(ids));
    }
  }

  void run() { dfs(0); }

  std::int64_t best() const { return best_; }
  bool aborted() const { return aborted_; }
  std::uint64_t nodes() const { return nodes_; }

  KPacking packing() const {
    KPacking out{k_, {}};
    std::vector<std::int32_t> next_copy(ids_.size(), 1);
    for (const auto& ids : best_path_) {
      Bin bin;
      for (ItemId id : ids) bin.contents.push_back({id, next_copy[static_cast<std::size_t>(id)]++});
      out.bins.push_back(std::move(bin));
    }
    return out;
  }

  std::int64_t lower_bound() const {
    __int128 bins = (volume_ + capacity_ - 1) / capacity_;
    std::int64_t lb = static_cast<std::int64_t>(bins);
    std::int64_t big = 0;
    for (const auto& c : classes_) {
      if (c.begin < c.end) lb = std::max<std::int64_t>(lb, counts_[c.begin]);
      if (2 * c.size > capacity_) {
        for (std::size_t p = c.begin; p < c.end; ++p) big += counts_[p];
      }
    }
    return std::max(lb, big);
  }

 private:
  struct Class {
    std::int64_t size;
    std::size_t begin;
    std::size_t end;
  };

  void dfs(std::int64_t used) {
    if (aborted_) return;
    if (volume_ == 0) {
      if (used < best_) {
        best_ = used;
        best_path_ = path_;
      }
      return;
    }
    if (used + lower_bound() >= best_) return;
    std::string key(reinterpret_cast<const char*>(counts_.data()), counts_.size() * sizeof(std::uint16_t));
    auto [it, inserted] = memo_.try_emplace(std::move(key), used);
    if (!inserted) {
      if (it->second <= used) return;
      it->second = used;
    }
    std::size_t first = 0;
    while (counts_[classes_[first].begin] == 0) ++first;
    take_.assign(classes_.size(), 0);
    choose(first, first, capacity_, used);
  }

  std::size_t available(const Class& c) const {
    std::size_t a = 0;
    for (std::size_t p = c.begin; p < c.end && counts_[p] > 0; ++p) ++a;
    return a;
  }

  void choose(std::size_t first, std::size_t cls, std::int64_t residual, std::int64_t used) {
    if (aborted_) return;
    if (cls == classes_.size()) {
      for (std::size_t c = first; c < classes_.size(); ++c) {
        if (take_[c] < available(classes_[c]) && classes_[c].size <= residual) return;  // not maximal
      }
      descend(used);
      return;
    }
    const Class& c = classes_[cls];
    std::size_t avail = available(c);
    std::size_t fit = c.size > 0 ? static_cast<std::size_t>(residual / c.size) : avail;
    std::size_t hi = std::min(avail, fit);
    std::size_t lo = (cls == first) ? 1 : 0;
    for (std::size_t t = hi + 1; t-- > lo;) {
      take_[cls] = t;
      choose(first, cls + 1, residual - static_cast<std::int64_t>(t) * c.size, used);
      if (aborted_) return;
    }
    take_[cls] = 0;
  }

  void descend(std::int64_t used) {
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    auto saved_counts = counts_;
    auto saved_ids = ids_;
    auto saved_take = take_;
    std::vector<ItemId> bin;
    for (std::size_t ci = 0; ci < classes_.size(); ++ci) {
      const Class& c = classes_[ci];
      for (std::size_t j = 0; j < take_[ci]; ++j) {
        --counts_[c.begin + j];
        bin.push_back(ids_[c.begin + j]);
        volume_ -= c.size;
      }
      if (take_[ci] > 0) resort(c);
    }
    path_.push_back(std::move(bin));
    dfs(used + 1);
    path_.pop_back();
    counts_ = std::move(saved_counts);
    ids_ = std::move(saved_ids);
    take_ = std::move(saved_take);
    for (std::size_t ci = 0; ci < classes_.size(); ++ci) {
      volume_ += static_cast<__int128>(take_[ci]) * classes_[ci].size;
    }
  }

  void resort(const Class& c) {
    std::vector<std::pair<std::uint16_t, ItemId>> block;
    for (std::size_t p = c.begin; p < c.end; ++p) block.emplace_back(counts_[p], ids_[p]);
    std::sort(block.begin(), block.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    for (std::size_t p = c.begin; p < c.end; ++p) {
      counts_[p] = block[p - c.begin].first;
      ids_[p] = block[p - c.begin].second;
    }
  }

  int k_;
  std::uint64_t budget_;
  std::int64_t capacity_ = 0;
  std::vector<Class> classes_;
  std::vector<ItemId> ids_;
  std::vector<std::uint16_t> counts_;
  __int128 volume_ = 0;
  std::vector<std::size_t> take_;
  std::vector<std::vector<ItemId>> path_;
  std::vector<std::vector<ItemId>> best_path_;
  std::int64_t best_ = 0;
  bool aborted_ = false;
  std::uint64_t nodes_ = 0;
  std::unordered_map<std::string, std::int64_t> memo_;
};

}  // namespace

ExactResult opt_kbp(const Instance& instance, int k, std::uint64_t node_budget) {
  require_k(k);
  if (node_budget == 0) throw std::invalid_argument("node budget must be positive");
  if (k > 65535) throw std::invalid_argument("k too large for the exact solver");
  IntegerInstance inst = to_integer(instance);
  BranchAndBound search(inst, k, node_budget);
  KPacking ff = ffk(inst, k);
  KPacking ffd = ffdk(inst, k);
  search.seed_incumbent(ffd.bins.size() < ff.bins.size() ? ffd : ff);
  if (search.best() > search.lower_bound()) search.run();
  ExactResult out;
  out.count = search.best();
  out.packing = search.packing();
  out.proven = !search.aborted();
  out.nodes = search.nodes();
  return out;
}

ExactResult opt_bp(const Instance& instance, std::uint64_t node_budget) {
  return opt_kbp(instance, 1, node_budget);
}

}  // namespace kbin
