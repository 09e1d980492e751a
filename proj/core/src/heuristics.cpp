#include "kbin/heuristics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "kbin/first_fit.hpp"

namespace kbin {

namespace {

KPacking first_fit_order(const IntegerInstance& instance, int k, std::span<const ItemId> order) {
  require_k(k);
  FirstFitPacker packer(instance.capacity, instance.count());
  for (int copy = 1; copy <= k; ++copy) {
    for (ItemId id : order) {
      packer.place({id, copy}, instance.sizes[static_cast<std::size_t>(id)]);
    }
  }
  return KPacking{k, packer.take_bins()};
}

std::vector<ItemId> identity_order(std::size_t n) {
  std::vector<ItemId> order(n);
  std::iota(order.begin(), order.end(), 0);
  return order;
}

}  // namespace

KPacking ffk(const IntegerInstance& instance, int k) {
  auto order = identity_order(instance.count());
  return first_fit_order(instance, k, order);
}

KPacking ffk(const Instance& instance, int k) { return ffk(to_integer(instance), k); }

KPacking ffdk(const IntegerInstance& instance, int k) {
  auto order = identity_order(instance.count());
  std::stable_sort(order.begin(), order.end(), [&](ItemId a, ItemId b) {
    return instance.sizes[static_cast<std::size_t>(a)] > instance.sizes[static_cast<std::size_t>(b)];
  });
  return first_fit_order(instance, k, order);
}

KPacking ffdk(const Instance& instance, int k) { return ffdk(to_integer(instance), k); }

KPacking nfk(const IntegerInstance& instance, int k) {
  require_k(k);
  KPacking out{k, {}};
  std::int64_t residual = -1;
  // Items in the open bin; copies of one item cannot meet in it unless the
  // whole instance fits in a single bin.
  std::vector<char> in_open(instance.count(), 0);
  for (int copy = 1; copy <= k; ++copy) {
    for (std::size_t i = 0; i < instance.count(); ++i) {
      std::int64_t size = instance.sizes[i];
      if (out.bins.empty() || size > residual || in_open[i]) {
        if (!out.bins.empty()) {
          for (const auto& c : out.bins.back().contents) in_open[static_cast<std::size_t>(c.item)] = 0;
        }
        out.bins.emplace_back();
        residual = instance.capacity;
      }
      out.bins.back().contents.push_back({static_cast<ItemId>(i), copy});
      in_open[i] = 1;
      residual -= size;
    }
  }
  return out;
}

KPacking nfk(const Instance& instance, int k) { return nfk(to_integer(instance), k); }

Heuristic parse_heuristic(std::string_view name) {
  if (name == "ffk") return Heuristic::FFk;
  if (name == "ffdk") return Heuristic::FFDk;
  if (name == "nfk") return Heuristic::NFk;
  throw std::invalid_argument("unknown heuristic: " + std::string(name));
}

std::string_view to_string(Heuristic h) {
  switch (h) {
    case Heuristic::FFk: return "ffk";
    case Heuristic::FFDk: return "ffdk";
    case Heuristic::NFk: return "nfk";
  }
  return "?";
}

KPacking run_heuristic(Heuristic h, const IntegerInstance& instance, int k) {
  switch (h) {
    case Heuristic::FFk: return ffk(instance, k);
    case Heuristic::FFDk: return ffdk(instance, k);
    case Heuristic::NFk: return nfk(instance, k);
  }
  throw std::invalid_argument("unknown heuristic");
}

KPacking run_heuristic(Heuristic h, const Instance& instance, int k) {
  return run_heuristic(h, to_integer(instance), k);
}

}  // namespace kbin
