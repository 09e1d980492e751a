#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kbin/heuristics.hpp"
#include "kbin/io.hpp"

namespace kbin {

struct BenchSuite {
  std::vector<std::int64_t> capacities{100};
  std::vector<std::int64_t> opts{2, 3, 4, 5, 6, 7, 8, 9};
  std::size_t instances = 100;
  std::vector<int> ks{2, 3, 4, 5};
  std::vector<Heuristic> algorithms{Heuristic::FFk, Heuristic::FFDk, Heuristic::NFk};
  std::uint64_t seed = 1;
};

enum class BoundKind { FfkTheorem, NfkTheorem, FfdkConjecture };

std::string_view to_string(BoundKind kind);
BoundKind parse_bound_kind(std::string_view name);

/// Bin bound checked for an algorithm given OPT(D_k) = k opt:
/// FFk (3/2 + 1/(5k)) k opt + 3k, NFk 2 k opt + 1, FFDk (11 k opt + 6)/9.
BoundKind bound_kind(Heuristic algo);
Rational bin_bound(Heuristic algo, int k, std::int64_t opt);

struct BenchRow {
  std::int64_t capacity = 0;
  std::int64_t opt = 0;
  int k = 1;
  Heuristic algorithm = Heuristic::FFk;
  std::size_t instances = 0;
  std::int64_t max_bins = 0;
  Rational mean_bins;
  BoundKind bound_kind = BoundKind::FfkTheorem;
  Rational bound;
  std::size_t violations = 0;
  /// Packings that failed validate(); expected to stay zero.
  std::size_t invalid = 0;

  friend bool operator==(const BenchRow&, const BenchRow&) = default;
};

struct BenchReport {
  std::vector<BenchRow> rows;

  std::size_t violations() const;
  std::size_t invalid() const;
};

/// Instance i of cell (S, opt) is generate_instance(S, opt, seed') with a
/// seed derived from (seed, S, opt, i), so every k and algorithm sees the
/// same instances. Cells run on the worker pool; rows are sorted by
/// (S, opt, k, algorithm).
BenchReport run_bench(const BenchSuite& suite);

std::string bench_to_csv(const BenchReport& report);
BenchReport bench_from_csv(const std::string& text);
Json bench_to_json(const BenchReport& report);

}  // namespace kbin
