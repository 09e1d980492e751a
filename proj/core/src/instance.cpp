#include "kbin/instance.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

namespace kbin {

Instance::Instance(std::vector<Rational> sizes, Rational capacity)
    : sizes_(std::move(sizes)), capacity_(std::move(capacity)) {
  if (capacity_ <= 0) throw std::invalid_argument("capacity must be positive");
  if (sizes_.empty()) throw std::invalid_argument("instance must contain at least one item");
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    if (sizes_[i] <= 0) {
      throw std::invalid_argument("item " + std::to_string(i) + " has non-positive size");
    }
    if (sizes_[i] > capacity_) {
      throw std::invalid_argument("item " + std::to_string(i) + " exceeds the bin capacity");
    }
  }
}

Instance Instance::from_integers(std::span<const std::int64_t> sizes, std::int64_t capacity) {
  std::vector<Rational> values;
  values.reserve(sizes.size());
  for (auto s : sizes) values.emplace_back(s);
  return Instance(std::move(values), Rational(capacity));
}

IntegerInstance to_integer(const Instance& instance) {
  BigInt scale = denominator(instance.capacity());
  for (const auto& s : instance.sizes()) {
    scale = boost::multiprecision::lcm(scale, BigInt(denominator(s)));
  }
  IntegerInstance out;
  out.scale = scale;
  const BigInt limit = BigInt(1) << 62;
  BigInt total = 0;
  auto scaled = [&](const Rational& value) {
    Rational r = value * Rational(scale);
    BigInt v = numerator(r);  // denominator is 1 by construction
    return v;
  };
  BigInt cap = scaled(instance.capacity());
  if (cap >= limit) throw std::overflow_error("scaled capacity does not fit in 62 bits");
  out.capacity = cap.convert_to<std::int64_t>();
  out.sizes.reserve(instance.count());
  for (const auto& s : instance.sizes()) {
    BigInt v = scaled(s);
    total += v;
    out.sizes.push_back(v.convert_to<std::int64_t>());
  }
  if (total >= limit) throw std::overflow_error("scaled volume does not fit in 62 bits");
  return out;
}

Rational load(const Bin& bin, const Instance& instance) {
  Rational total = 0;
  for (const auto& c : bin.contents) total += instance.size(c.item);
  return total;
}

std::string to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::Overfull: return "overfull";
    case Violation::Kind::DuplicateItem: return "duplicate-item";
    case Violation::Kind::WrongCopyCount: return "wrong-copy-count";
    case Violation::Kind::UnknownItem: return "unknown-item";
    case Violation::Kind::BadCopyIndex: return "bad-copy-index";
  }
  return "unknown";
}

std::vector<Violation> validate(const Instance& instance, const KPacking& packing) {
  std::vector<Violation> out;
  const auto n = static_cast<ItemId>(instance.count());
  std::vector<std::int64_t> copies(instance.count(), 0);
  std::vector<std::size_t> last_seen(instance.count(), std::numeric_limits<std::size_t>::max());
  for (std::size_t b = 0; b < packing.bins.size(); ++b) {
    Rational total = 0;
    for (const auto& c : packing.bins[b].contents) {
      if (c.item < 0 || c.item >= n) {
        out.push_back({Violation::Kind::UnknownItem, b, c.item, "item id out of range"});
        continue;
      }
      if (c.copy < 1 || c.copy > packing.k) {
        out.push_back({Violation::Kind::BadCopyIndex, b, c.item,
                       "copy index " + std::to_string(c.copy) + " outside 1.." + std::to_string(packing.k)});
      }
      auto idx = static_cast<std::size_t>(c.item);
      if (last_seen[idx] == b) {
        out.push_back({Violation::Kind::DuplicateItem, b, c.item, "item appears twice in one bin"});
      }
      last_seen[idx] = b;
      ++copies[idx];
      total += instance.size(c.item);
    }
    if (total > instance.capacity()) {
      out.push_back({Violation::Kind::Overfull, b, -1,
                     "load " + to_string(total) + " exceeds capacity " + to_string(instance.capacity())});
    }
  }
  for (ItemId i = 0; i < n; ++i) {
    if (copies[static_cast<std::size_t>(i)] != packing.k) {
      out.push_back({Violation::Kind::WrongCopyCount, 0, i,
                     "item packed " + std::to_string(copies[static_cast<std::size_t>(i)]) + " times, expected " +
                         std::to_string(packing.k)});
    }
  }
  return out;
}

void require_k(int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
}

std::vector<ItemCopy> replicate(const Instance& instance, int k) {
  require_k(k);
  std::vector<ItemCopy> out;
  out.reserve(instance.count() * static_cast<std::size_t>(k));
  for (int copy = 1; copy <= k; ++copy) {
    for (std::size_t i = 0; i < instance.count(); ++i) {
      out.push_back({static_cast<ItemId>(i), copy});
    }
  }
  return out;
}

Rational volume(std::span<const Rational> sizes) {
  Rational total = 0;
  for (const auto& s : sizes) total += s;
  return total;
}

SizeClasses size_classes(const Instance& instance) {
  std::map<Rational, std::vector<ItemId>, std::greater<>> by_size;
  for (std::size_t i = 0; i < instance.count(); ++i) {
    by_size[instance.sizes()[i]].push_back(static_cast<ItemId>(i));
  }
  SizeClasses out;
  for (auto& [size, ids] : by_size) {
    out.sizes.push_back(size);
    out.counts.push_back(static_cast<std::int64_t>(ids.size()));
    out.members.push_back(std::move(ids));
  }
  return out;
}

std::int64_t bin_lower_bound(const Instance& instance, int k) {
  require_k(k);
  Rational bound = Rational(k) * volume(instance) / instance.capacity();
  return std::max<std::int64_t>(ceil_to_int64(bound), k);
}

}  // namespace kbin
