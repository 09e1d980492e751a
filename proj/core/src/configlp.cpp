#include "kbin/configlp.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

#include "copy_queues.hpp"
#include "kbin/first_fit.hpp"
#include "kbin/simplex.hpp"

namespace kbin {

namespace {

struct ScaledClasses {
  std::vector<std::int64_t> sizes;
  std::int64_t capacity = 0;
};

ScaledClasses scale_classes(const SizeClasses& classes, const Rational& capacity) {
  IntegerInstance inst = to_integer(Instance(classes.sizes, capacity));
  return {std::move(inst.sizes), inst.capacity};
}

void enumerate(const ScaledClasses& sc, const SizeClasses& classes, std::size_t cls, std::int64_t residual,
               Configuration& current, bool nonempty, std::vector<Configuration>& out, std::size_t cap) {
  if (cls == sc.sizes.size()) {
    if (!nonempty) return;
    if (out.size() == cap) throw CapacityExceeded("more than " + std::to_string(cap) + " configurations");
    out.push_back(current);
    return;
  }
  std::int64_t hi = std::min(classes.counts[cls], residual / sc.sizes[cls]);
  for (std::int64_t a = 0; a <= hi; ++a) {
    current[cls] = a;
    enumerate(sc, classes, cls + 1, residual - a * sc.sizes[cls], current, nonempty || a > 0, out, cap);
  }
  current[cls] = 0;
}

std::vector<Bin> drop_empty(std::vector<Bin> bins) {
  std::erase_if(bins, [](const Bin& b) { return b.contents.empty(); });
  return bins;
}

}  // namespace

std::vector<Configuration> enumerate_configs(const SizeClasses& classes, const Rational& capacity,
                                             std::size_t cap) {
  std::vector<Configuration> out;
  if (classes.m() == 0) return out;
  ScaledClasses sc = scale_classes(classes, capacity);
  Configuration current(classes.m(), 0);
  enumerate(sc, classes, 0, sc.capacity, current, false, out, cap);
  return out;
}

std::size_t ConfigProgram::singleton(std::size_t cls) const {
  Configuration e(classes.m(), 0);
  e.at(cls) = 1;
  auto it = std::lower_bound(configs.begin(), configs.end(), e);
  if (it == configs.end() || *it != e) throw std::logic_error("singleton configuration missing");
  return static_cast<std::size_t>(it - configs.begin());
}

ConfigProgram build_program(SizeClasses classes, Rational capacity, int k, std::size_t cap) {
  require_k(k);
  ConfigProgram p;
  p.configs = enumerate_configs(classes, capacity, cap);
  p.classes = std::move(classes);
  p.capacity = std::move(capacity);
  p.k = k;
  return p;
}

ConfigProgram build_program(const Instance& instance, int k, std::size_t cap) {
  return build_program(size_classes(instance), instance.capacity(), k, cap);
}

std::vector<std::size_t> FractionalSolution::support() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] > 0) out.push_back(j);
  }
  return out;
}

FractionalSolution solve_fk(const ConfigProgram& program) {
  const std::size_t m = program.classes.m();
  StandardLp lp;
  lp.rows = m;
  lp.columns.reserve(program.configs.size());
  for (const auto& a : program.configs) {
    SparseColumn col;
    for (std::size_t i = 0; i < m; ++i) {
      if (a[i] != 0) col.emplace_back(static_cast<std::int32_t>(i), a[i]);
    }
    lp.columns.push_back(std::move(col));
  }
  lp.cost.assign(program.configs.size(), 1);
  for (std::size_t i = 0; i < m; ++i) lp.rhs.push_back(Rational(program.classes.counts[i] * program.k));
  std::vector<std::size_t> basis;
  for (std::size_t i = 0; i < m; ++i) basis.push_back(program.singleton(i));
  LpSolution sol = solve_lp(lp, basis);
  return {std::move(sol.x), std::move(sol.value), std::move(sol.basis), sol.pivots};
}

KPacking realize_integral(const ConfigProgram& program, std::span<const std::int64_t> counts) {
  if (counts.size() != program.configs.size()) throw std::invalid_argument("counts length mismatch");
  const std::size_t m = program.classes.m();
  for (std::size_t i = 0; i < m; ++i) {
    std::int64_t supply = 0;
    for (std::size_t j = 0; j < counts.size(); ++j) {
      if (counts[j] < 0) throw std::invalid_argument("negative configuration count");
      supply += counts[j] * program.configs[j][i];
    }
    if (supply < program.classes.counts[i] * program.k) {
      throw std::invalid_argument("configuration counts do not cover class " + std::to_string(i));
    }
  }
  detail::CopyQueues queues(program.classes, program.k);
  KPacking out{program.k, {}};
  for (std::size_t j = 0; j < counts.size(); ++j) {
    for (std::int64_t c = 0; c < counts[j]; ++c) {
      Bin bin = queues.take_config(program.configs[j]);
      if (!bin.contents.empty()) out.bins.push_back(std::move(bin));
    }
  }
  return out;
}

RoundingResult round_to_integral(const ConfigProgram& program, const FractionalSolution& solution) {
  if (solution.x.size() != program.configs.size()) throw std::invalid_argument("solution length mismatch");
  const std::size_t m = program.classes.m();
  ScaledClasses sc = scale_classes(program.classes, program.capacity);

  detail::CopyQueues queues(program.classes, program.k);
  std::vector<Bin> base;
  std::vector<std::size_t> fractional;
  for (std::size_t j = 0; j < solution.x.size(); ++j) {
    std::int64_t f = floor_to_int64(solution.x[j]);
    for (std::int64_t c = 0; c < f; ++c) base.push_back(queues.take_config(program.configs[j]));
    if (Rational(f) != solution.x[j]) fractional.push_back(j);
  }
  base = drop_empty(std::move(base));
  std::vector<ItemCopy> residual = queues.remaining();

  std::map<ItemId, std::int64_t> size_of;
  ItemId max_id = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (ItemId id : program.classes.members[i]) {
      size_of[id] = sc.sizes[i];
      max_id = std::max(max_id, id);
    }
  }
  const std::size_t id_bound = static_cast<std::size_t>(max_id) + 1;

  // (a) one bin per fractional configuration
  std::vector<Bin> one_each;
  for (std::size_t j : fractional) one_each.push_back(queues.take_config(program.configs[j]));
  one_each = drop_empty(std::move(one_each));
  if (!queues.empty()) throw std::logic_error("rounded configurations do not cover the residual");

  // (b) first-fit over the residual sequence
  FirstFitPacker ff(sc.capacity, id_bound);
  for (const auto& c : residual) ff.place(c, size_of[c.item]);
  std::vector<Bin> ff_bins = ff.take_bins();

  // (c) first-fit inside each copy layer separately
  std::vector<Bin> layered;
  for (int copy = 1; copy <= program.k; ++copy) {
    FirstFitPacker layer(sc.capacity, id_bound);
    for (const auto& c : residual) {
      if (c.copy == copy) layer.place(c, size_of[c.item]);
    }
    for (auto& b : layer.take_bins()) layered.push_back(std::move(b));
  }

  std::vector<Bin>* best = &one_each;
  if (ff_bins.size() < best->size()) best = &ff_bins;
  if (layered.size() < best->size()) best = &layered;

  RoundingResult out;
  out.floor_bins = static_cast<std::int64_t>(base.size());
  out.residual_bins = static_cast<std::int64_t>(best->size());
  out.packing.k = program.k;
  out.packing.bins = std::move(base);
  for (auto& b : *best) out.packing.bins.push_back(std::move(b));
  out.bound = solution.value + Rational(BigInt(static_cast<std::int64_t>(m) + program.k), BigInt(2));
  return out;
}

}  // namespace kbin
