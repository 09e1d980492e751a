#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kbin/rational.hpp"

namespace kbin {

class LpInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LpUnbounded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sparse integer column: (row, coefficient) pairs.
using SparseColumn = std::vector<std::pair<std::int32_t, std::int64_t>>;

/// min c.x subject to A x = b, x >= 0, with b >= 0 and integer data.
struct StandardLp {
  std::size_t rows = 0;
  std::vector<SparseColumn> columns;
  std::vector<std::int64_t> cost;
  std::vector<Rational> rhs;
};

struct LpSolution {
  std::vector<Rational> x;
  Rational value;
  /// Column index of the basic variable of each row.
  std::vector<std::size_t> basis;
  std::uint64_t pivots = 0;
};

/// Exact revised simplex with Bland's anti-cycling rule. When
/// `initial_basis` is given its columns must form a feasible basis;
/// otherwise a phase-one problem with artificial columns is solved first.
LpSolution solve_lp(const StandardLp& lp, std::optional<std::vector<std::size_t>> initial_basis = std::nullopt);

}  // namespace kbin
