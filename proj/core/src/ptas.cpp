#include "kbin/ptas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "copy_queues.hpp"
#include "kbin/first_fit.hpp"

namespace kbin {

namespace {

std::vector<SizedItem> sorted_desc(std::span<const SizedItem> items) {
  std::vector<SizedItem> out(items.begin(), items.end());
  std::stable_sort(out.begin(), out.end(), [](const SizedItem& a, const SizedItem& b) {
    return a.size != b.size ? a.size > b.size : a.id < b.id;
  });
  return out;
}

void require_eps(const Rational& eps) {
  if (eps <= 0 || eps > Rational(BigInt(1), BigInt(2))) throw std::invalid_argument("eps must lie in (0, 1/2]");
}

// Integral configuration problem: minimum number of configurations whose sum
// equals the demand k n_i of every class. Configurations are built one bin at
// a time; each bin contains the largest class with remaining demand and is
// maximal for the remaining demand.
class ConfigSearch {
 public:
  ConfigSearch(std::vector<std::int64_t> sizes, std::vector<std::int64_t> caps, std::vector<std::int64_t> demand,
               std::int64_t capacity, std::uint64_t budget)
      : sizes_(std::move(sizes)),
        caps_(std::move(caps)),
        remaining_(std::move(demand)),
        capacity_(capacity),
        budget_(budget),
        take_(sizes_.size(), 0) {
    for (std::size_t i = 0; i < sizes_.size(); ++i) volume_ += static_cast<__int128>(sizes_[i]) * remaining_[i];
  }

  void run() { dfs(0); }
  bool aborted() const { return aborted_; }
  bool found() const { return best_ < std::numeric_limits<std::int64_t>::max(); }
  const std::vector<Configuration>& best_path() const { return best_path_; }

 private:
  std::int64_t lower_bound() const {
    auto lb = static_cast<std::int64_t>((volume_ + capacity_ - 1) / capacity_);
    std::int64_t big = 0;
    for (std::size_t i = 0; i < sizes_.size(); ++i) {
      if (2 * sizes_[i] > capacity_) big += remaining_[i];
    }
    return std::max(lb, big);
  }

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
    auto [it, inserted] = memo_.try_emplace(remaining_, used);
    if (!inserted) {
      if (it->second <= used) return;
      it->second = used;
    }
    std::size_t first = 0;
    while (remaining_[first] == 0) ++first;
    std::fill(take_.begin(), take_.end(), 0);
    choose(first, first, capacity_, used);
  }

  std::int64_t limit(std::size_t cls) const { return std::min(remaining_[cls], caps_[cls]); }

  void choose(std::size_t first, std::size_t cls, std::int64_t residual, std::int64_t used) {
    if (aborted_) return;
    if (cls == sizes_.size()) {
      for (std::size_t c = first; c < sizes_.size(); ++c) {
        if (take_[c] < limit(c) && sizes_[c] <= residual) return;
      }
      descend(used);
      return;
    }
    std::int64_t hi = std::min(limit(cls), residual / sizes_[cls]);
    std::int64_t lo = cls == first ? 1 : 0;
    for (std::int64_t a = hi; a >= lo; --a) {
      take_[cls] = a;
      choose(first, cls + 1, residual - a * sizes_[cls], used);
      if (aborted_) return;
    }
    take_[cls] = 0;
  }

  void descend(std::int64_t used) {
    if (++nodes_ > budget_ && found()) {
      aborted_ = true;
      return;
    }
    Configuration bin = take_;
    for (std::size_t i = 0; i < sizes_.size(); ++i) {
      remaining_[i] -= bin[i];
      volume_ -= static_cast<__int128>(bin[i]) * sizes_[i];
    }
    path_.push_back(bin);
    dfs(used + 1);
    path_.pop_back();
    for (std::size_t i = 0; i < sizes_.size(); ++i) {
      remaining_[i] += bin[i];
      volume_ += static_cast<__int128>(bin[i]) * sizes_[i];
    }
    take_ = std::move(bin);
  }

  std::vector<std::int64_t> sizes_;
  std::vector<std::int64_t> caps_;
  std::vector<std::int64_t> remaining_;
  std::int64_t capacity_;
  std::uint64_t budget_;
  std::vector<std::int64_t> take_;
  __int128 volume_ = 0;
  std::vector<Configuration> path_;
  std::vector<Configuration> best_path_;
  std::int64_t best_ = std::numeric_limits<std::int64_t>::max();
  bool aborted_ = false;
  std::uint64_t nodes_ = 0;
  std::map<std::vector<std::int64_t>, std::int64_t> memo_;
};

struct Split {
  std::vector<SizedItem> large;
  std::vector<ItemId> small;
};

Split split_by(const Instance& instance, const Rational& threshold) {
  Split out;
  for (std::size_t i = 0; i < instance.count(); ++i) {
    auto id = static_cast<ItemId>(i);
    if (instance.sizes()[i] <= threshold) {
      out.small.push_back(id);
    } else {
      out.large.push_back({id, instance.sizes()[i]});
    }
  }
  return out;
}

// Copy c of every item, one item per bin, for c = 1..k.
void one_per_bin(std::vector<Bin>& bins, std::span<const ItemId> items, int k) {
  for (int copy = 1; copy <= k; ++copy) {
    for (ItemId id : items) bins.push_back(Bin{{{id, copy}}});
  }
}

}  // namespace

SizeClasses classes_of(std::span<const SizedItem> items) {
  std::map<Rational, std::vector<ItemId>, std::greater<>> by_size;
  for (const auto& it : items) by_size[it.size].push_back(it.id);
  SizeClasses out;
  for (auto& [size, ids] : by_size) {
    std::sort(ids.begin(), ids.end());
    out.sizes.push_back(size);
    out.counts.push_back(static_cast<std::int64_t>(ids.size()));
    out.members.push_back(std::move(ids));
  }
  return out;
}

Grouping linear_grouping(std::span<const SizedItem> items, std::size_t g) {
  if (g == 0) throw std::invalid_argument("group size must be positive");
  Grouping out;
  auto sorted = sorted_desc(items);
  for (std::size_t start = 0; start < sorted.size(); start += g) {
    std::size_t end = std::min(sorted.size(), start + g);
    std::vector<ItemId> group;
    for (std::size_t p = start; p < end; ++p) {
      group.push_back(sorted[p].id);
      if (start == 0) {
        out.u_prime.push_back(sorted[p].id);
      } else {
        out.u_doubleprime.push_back({sorted[p].id, sorted[start].size});
      }
    }
    out.groups.push_back(std::move(group));
  }
  return out;
}

Grouping geometric_grouping(std::span<const SizedItem> items, std::int64_t g, const Rational& eps,
                            const Rational& capacity) {
  if (g < 2) throw std::invalid_argument("geometric grouping needs g >= 2");
  const Rational threshold = eps * capacity;
  for (const auto& it : items) {
    if (it.size <= threshold) throw std::invalid_argument("geometric grouping needs every item above eps * S");
  }
  Grouping out;
  auto sorted = sorted_desc(items);
  const Rational target = Rational(g) * capacity;
  std::vector<std::pair<std::size_t, std::size_t>> bounds;
  Rational acc = 0;
  std::size_t start = 0;
  for (std::size_t p = 0; p < sorted.size(); ++p) {
    acc += sorted[p].size;
    if (acc >= target || p + 1 == sorted.size()) {
      bounds.emplace_back(start, p + 1);
      start = p + 1;
      acc = 0;
    }
  }
  for (std::size_t gi = 0; gi < bounds.size(); ++gi) {
    auto [lo, hi] = bounds[gi];
    std::vector<ItemId> group;
    for (std::size_t p = lo; p < hi; ++p) group.push_back(sorted[p].id);
    out.groups.push_back(group);
    if (gi == 0) {
      out.u_prime.insert(out.u_prime.end(), group.begin(), group.end());
      continue;
    }
    auto li = static_cast<std::int64_t>(hi - lo);
    auto prev = static_cast<std::int64_t>(bounds[gi - 1].second - bounds[gi - 1].first);
    std::int64_t delta = std::max<std::int64_t>(0, li - prev);
    std::size_t keep = hi - lo - static_cast<std::size_t>(delta);
    for (std::size_t p = lo; p < hi; ++p) {
      if (p - lo < keep) {
        out.u_doubleprime.push_back({sorted[p].id, sorted[lo].size});
      } else {
        out.u_prime.push_back(sorted[p].id);
      }
    }
  }
  return out;
}

void add_small_items(KPacking& packing, const Instance& instance, std::span<const ItemId> small) {
  if (small.empty()) return;
  IntegerInstance ints = to_integer(instance);
  FirstFitPacker packer(ints.capacity, ints.count());
  for (const auto& bin : packing.bins) packer.add_bin(bin, ints.sizes);
  for (int copy = 1; copy <= packing.k; ++copy) {
    for (ItemId id : small) packer.place({id, copy}, ints.sizes[static_cast<std::size_t>(id)]);
  }
  packing.bins = packer.take_bins();
}

PtasResult dlvl_kbp(const Instance& instance, int k, const Rational& eps, std::uint64_t node_budget) {
  require_k(k);
  require_eps(eps);
  PtasResult out;
  out.packing.k = k;
  Split split = split_by(instance, eps * instance.capacity());
  out.large_items = split.large.size();
  out.small_items = split.small.size();
  if (!split.large.empty()) {
    auto g = static_cast<std::size_t>(
        std::max<std::int64_t>(1, ceil_to_int64(Rational(static_cast<std::int64_t>(split.large.size())) * eps * eps)));
    Grouping grouping = linear_grouping(split.large, g);
    // Every group is rounded up, the first one included.
    std::vector<SizedItem> rounded = grouping.u_doubleprime;
    const Rational& top = instance.size(grouping.u_prime.front());
    for (ItemId id : grouping.u_prime) rounded.push_back({id, top});
    SizeClasses classes = classes_of(rounded);
    IntegerInstance scaled = to_integer(Instance(classes.sizes, instance.capacity()));
    std::vector<std::int64_t> demand;
    for (auto c : classes.counts) demand.push_back(c * k);
    ConfigSearch search(scaled.sizes, classes.counts, demand, scaled.capacity, node_budget);
    search.run();
    if (!search.found()) throw std::runtime_error("configuration search found no packing");
    out.proven = !search.aborted();
    detail::CopyQueues queues(classes, k);
    for (const auto& config : search.best_path()) out.packing.bins.push_back(queues.take_config(config));
  }
  add_small_items(out.packing, instance, split.small);
  return out;
}

PtasResult kk1_kbp(const Instance& instance, int k, const Rational& eps) {
  require_k(k);
  require_eps(eps);
  PtasResult out;
  out.packing.k = k;
  Rational inv_n(BigInt(1), BigInt(static_cast<std::int64_t>(instance.count())));
  Split split = split_by(instance, std::max(inv_n, eps) * instance.capacity());
  out.large_items = split.large.size();
  out.small_items = split.small.size();
  if (!split.large.empty()) {
    auto g = static_cast<std::size_t>(
        std::max<std::int64_t>(1, ceil_to_int64(Rational(static_cast<std::int64_t>(split.large.size())) * eps * eps)));
    Grouping grouping = linear_grouping(split.large, g);
    one_per_bin(out.packing.bins, grouping.u_prime, k);
    if (!grouping.u_doubleprime.empty()) {
      ConfigProgram program = build_program(classes_of(grouping.u_doubleprime), instance.capacity(), k);
      FractionalSolution sol = solve_fk(program);
      out.lp_value = sol.value;
      RoundingResult rounded = round_to_integral(program, sol);
      for (auto& b : rounded.packing.bins) out.packing.bins.push_back(std::move(b));
    }
  }
  add_small_items(out.packing, instance, split.small);
  return out;
}

PtasResult kk2_kbp(const Instance& instance, int k, std::optional<Rational> eps_opt, std::int64_t g) {
  require_k(k);
  if (g < 2) throw std::invalid_argument("g must be at least 2");
  const Rational& capacity = instance.capacity();
  const Rational total = volume(instance);
  Rational eps = eps_opt ? *eps_opt : std::min(Rational(BigInt(1), BigInt(2)), Rational(capacity / total));
  if (eps <= 0 || eps >= 1) throw std::invalid_argument("eps must lie in (0, 1)");

  PtasResult out;
  out.packing.k = k;
  IntegerInstance ints = to_integer(instance);
  Split split = split_by(instance, eps * capacity);
  out.large_items = split.large.size();
  out.small_items = split.small.size();

  const double gd = static_cast<double>(g);
  const double guard = 1.0 + gd / (gd - 1.0) * std::log(1.0 / to_double(eps));
  out.iteration_bound = std::log(to_double(total / capacity)) / std::log(gd) + 1.0;

  std::vector<SizedItem> J = split.large;
  auto volume_ratio = [&](const std::vector<SizedItem>& items) {
    Rational v = 0;
    for (const auto& it : items) v += it.size;
    return to_double(Rational(v / capacity));
  };
  while (!J.empty() && volume_ratio(J) > guard) {
    ++out.iterations;
    Grouping grouping = geometric_grouping(J, g, eps, capacity);
    FirstFitPacker leftovers(ints.capacity, ints.count());
    for (int copy = 1; copy <= k; ++copy) {
      for (ItemId id : grouping.u_prime) leftovers.place({id, copy}, ints.sizes[static_cast<std::size_t>(id)]);
    }
    std::vector<SizedItem> next;
    if (!grouping.u_doubleprime.empty()) {
      ConfigProgram program = build_program(classes_of(grouping.u_doubleprime), capacity, k);
      FractionalSolution sol = solve_fk(program);
      if (!out.lp_value) out.lp_value = sol.value;
      detail::CopyQueues queues(program.classes, k);
      for (std::size_t j = 0; j < sol.x.size(); ++j) {
        std::int64_t f = floor_to_int64(sol.x[j]);
        for (std::int64_t c = 0; c < f; ++c) {
          Bin bin = queues.take_config(program.configs[j]);
          if (!bin.contents.empty()) out.packing.bins.push_back(std::move(bin));
        }
      }
      std::vector<ItemId> untouched = queues.untouched();
      std::sort(untouched.begin(), untouched.end());
      for (const auto& c : queues.remaining()) {
        if (!std::binary_search(untouched.begin(), untouched.end(), c.item)) {
          leftovers.place(c, ints.sizes[static_cast<std::size_t>(c.item)]);
        }
      }
      for (ItemId id : untouched) next.push_back({id, instance.size(id)});
      std::sort(next.begin(), next.end(), [](const SizedItem& a, const SizedItem& b) { return a.id < b.id; });
    }
    for (auto& b : leftovers.take_bins()) out.packing.bins.push_back(std::move(b));
    J = std::move(next);
  }

  if (!J.empty()) {
    FirstFitPacker tail(ints.capacity, ints.count());
    for (const auto& it : J) tail.place({it.id, 1}, ints.sizes[static_cast<std::size_t>(it.id)]);
    std::vector<Bin> once = tail.take_bins();
    for (int copy = 1; copy <= k; ++copy) {
      for (const auto& bin : once) {
        Bin b;
        for (const auto& c : bin.contents) b.contents.push_back({c.item, copy});
        out.packing.bins.push_back(std::move(b));
      }
    }
  }
  add_small_items(out.packing, instance, split.small);
  return out;
}

}  // namespace kbin
