#include "kbin/kopt.hpp"

#include <array>
#include <stdexcept>
#include <string>

#include "kbin/parallel.hpp"
#include "kbin/simplex.hpp"

namespace kbin {

namespace {

std::vector<std::uint32_t> maximal_subsets(const IntegerInstance& inst) {
  const std::size_t n = inst.count();
  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  std::vector<std::int64_t> sum(std::size_t{1} << n, 0);
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 1; mask <= full && mask != 0; ++mask) {
    std::uint32_t low = mask & (~mask + 1);
    int bit = __builtin_ctz(low);
    sum[mask] = sum[mask ^ low] + inst.sizes[static_cast<std::size_t>(bit)];
    if (sum[mask] > inst.capacity) continue;
    bool maximal = true;
    for (std::size_t j = 0; j < n && maximal; ++j) {
      if (!(mask >> j & 1u) && sum[mask] + inst.sizes[j] <= inst.capacity) maximal = false;
    }
    if (maximal) out.push_back(mask);
    if (mask == full) break;
  }
  return out;
}

}  // namespace

EgalResult egalitarian_fraction(const Instance& instance, std::size_t agent_cap) {
  const std::size_t n = instance.count();
  if (n > agent_cap || n > 24) {
    throw CapacityExceeded("egalitarian fraction supports at most " + std::to_string(std::min<std::size_t>(agent_cap, 24)) +
                           " agents");
  }
  IntegerInstance inst = to_integer(instance);
  std::vector<std::uint32_t> subsets = maximal_subsets(inst);

  // min sum mu  s.t.  sum_w mu_w w - s = 1,  mu, s >= 0;  r_max = 1 / optimum.
  StandardLp lp;
  lp.rows = n;
  for (auto mask : subsets) {
    SparseColumn col;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1u) col.emplace_back(static_cast<std::int32_t>(i), 1);
    }
    lp.columns.push_back(std::move(col));
    lp.cost.push_back(1);
  }
  for (std::size_t i = 0; i < n; ++i) {
    lp.columns.push_back({{static_cast<std::int32_t>(i), -1}});
    lp.cost.push_back(0);
  }
  lp.rhs.assign(n, Rational(1));
  LpSolution sol = solve_lp(lp);

  EgalResult out;
  out.r_max = Rational(1) / sol.value;
  for (std::size_t j = 0; j < subsets.size(); ++j) {
    if (sol.x[j] == 0) continue;
    WeightedSubset ws;
    for (std::size_t i = 0; i < n; ++i) {
      if (subsets[j] >> i & 1u) ws.agents.push_back(static_cast<ItemId>(i));
    }
    ws.weight = sol.x[j] / sol.value;
    out.witness.push_back(std::move(ws));
  }
  return out;
}

KSearchResult find_optimal_k(const Instance& instance, int k_max, std::uint64_t node_budget) {
  if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
  KSearchResult out;
  out.r_max = egalitarian_fraction(instance).r_max;
  out.table.resize(static_cast<std::size_t>(k_max));
  parallel_for(out.table.size(), [&](std::size_t i) {
    int k = static_cast<int>(i) + 1;
    ExactResult r = opt_kbp(instance, k, node_budget);
    KRow row;
    row.k = k;
    row.opt = r.count;
    row.fraction = Rational(BigInt(k), BigInt(r.count));
    // A packing reaching r_max is optimal since no fraction exceeds r_max.
    row.proven = r.proven || row.fraction == out.r_max;
    out.table[i] = row;
  });
  for (const auto& row : out.table) {
    if (!row.proven) {
      out.inconclusive = true;
      break;
    }
    if (row.fraction == out.r_max) {
      out.k_star = row.k;
      break;
    }
  }
  return out;
}

Instance unit_lowerbound_instance(std::int64_t n) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  std::vector<std::int64_t> sizes(static_cast<std::size_t>(n), 1);
  return Instance::from_integers(sizes, n - 1);
}

Instance k6_instance() {
  const std::vector<std::int64_t> sizes{4, 2, 5, 3, 2, 1};
  return Instance::from_integers(sizes, 9);
}

std::int64_t a_table(int n) {
  static constexpr std::array<std::int64_t, 21> values{
      1,     1,      2,      3,       5,       9,        32,       56,       144,      320,      1458,
      3645,  9477,   25515,  131072,  327680,  1114112,  3411968,  19531250, 56640625, 195312500};
  if (n < 1 || n > 21) throw std::invalid_argument("a(n) is tabulated for 1 <= n <= 21");
  return values[static_cast<std::size_t>(n - 1)];
}

}  // namespace kbin
