#pragma once

// Independent reference implementations used only by the tests.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <unordered_map>
#include <vector>

#include "kbin/instance.hpp"

namespace oracle {

// Minimum bins for k copies of each item by dynamic programming over
// remaining-copy vectors. Every bin contains the lowest-index item that still
// has copies left, which loses nothing since that item has to go somewhere.
inline std::int64_t min_bins(const std::vector<std::int64_t>& sizes, std::int64_t capacity, int k) {
  const std::size_t n = sizes.size();
  std::vector<std::uint32_t> fits;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1u) s += sizes[i];
    }
    if (s <= capacity) fits.push_back(mask);
  }
  const std::uint32_t base = static_cast<std::uint32_t>(k) + 1;
  std::vector<std::uint32_t> weight(n, 1);
  for (std::size_t i = 1; i < n; ++i) weight[i] = weight[i - 1] * base;
  std::unordered_map<std::uint32_t, std::int64_t> memo;
  std::function<std::int64_t(std::uint32_t)> solve = [&](std::uint32_t state) -> std::int64_t {
    if (state == 0) return 0;
    if (auto it = memo.find(state); it != memo.end()) return it->second;
    std::vector<std::uint32_t> count(n);
    std::uint32_t rest = state;
    std::size_t lowest = n;
    for (std::size_t i = 0; i < n; ++i) {
      count[i] = rest % base;
      rest /= base;
      if (count[i] > 0 && lowest == n) lowest = i;
    }
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (std::uint32_t mask : fits) {
      if (!(mask >> lowest & 1u)) continue;
      bool ok = true;
      std::uint32_t next = state;
      for (std::size_t i = 0; i < n && ok; ++i) {
        if (mask >> i & 1u) {
          if (count[i] == 0) ok = false;
          else next -= weight[i];
        }
      }
      if (ok) best = std::min(best, 1 + solve(next));
    }
    memo[state] = best;
    return best;
  };
  std::uint32_t start = 0;
  for (std::size_t i = 0; i < n; ++i) start += static_cast<std::uint32_t>(k) * weight[i];
  return solve(start);
}

// Plain first-fit scan over D_k, bin by bin, with no auxiliary structures.
inline std::vector<std::vector<std::int32_t>> first_fit_scan(const std::vector<std::int64_t>& sizes,
                                                             std::int64_t capacity, int k,
                                                             const std::vector<std::size_t>& order) {
  std::vector<std::vector<std::int32_t>> bins;
  std::vector<std::int64_t> load;
  for (int c = 0; c < k; ++c) {
    for (std::size_t id : order) {
      std::size_t b = 0;
      for (; b < bins.size(); ++b) {
        bool has = std::find(bins[b].begin(), bins[b].end(), static_cast<std::int32_t>(id)) != bins[b].end();
        if (!has && load[b] + sizes[id] <= capacity) break;
      }
      if (b == bins.size()) {
        bins.emplace_back();
        load.push_back(0);
      }
      bins[b].push_back(static_cast<std::int32_t>(id));
      load[b] += sizes[id];
    }
  }
  return bins;
}

}  // namespace oracle

namespace oracle {

// Minimum of 1.x over A x = b, x >= 0 by enumerating every basis of m
// columns and solving it with exact Gaussian elimination. Only for tiny m.
inline kbin::Rational lp_by_vertices(const std::vector<std::vector<std::int64_t>>& columns,
                                     const std::vector<std::int64_t>& rhs) {
  using kbin::Rational;
  const std::size_t m = rhs.size();
  const std::size_t t = columns.size();
  bool have = false;
  Rational best;
  std::vector<std::size_t> pick(m);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t from) {
    if (depth == m) {
      std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m + 1));
      for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < m; ++c) a[r][c] = Rational(columns[pick[c]][r]);
        a[r][m] = Rational(rhs[r]);
      }
      for (std::size_t c = 0; c < m; ++c) {
        std::size_t p = c;
        while (p < m && a[p][c] == 0) ++p;
        if (p == m) return;  // singular
        std::swap(a[p], a[c]);
        for (std::size_t r = 0; r < m; ++r) {
          if (r == c || a[r][c] == 0) continue;
          Rational f = a[r][c] / a[c][c];
          for (std::size_t j = c; j <= m; ++j) a[r][j] -= f * a[c][j];
        }
      }
      Rational value = 0;
      for (std::size_t c = 0; c < m; ++c) {
        Rational x = a[c][m] / a[c][c];
        if (x < 0) return;
        value += x;
      }
      if (!have || value < best) {
        best = value;
        have = true;
      }
      return;
    }
    for (std::size_t j = from; j < t; ++j) {
      pick[depth] = j;
      rec(depth + 1, j + 1);
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace oracle
