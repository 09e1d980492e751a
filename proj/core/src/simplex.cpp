#include "kbin/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace kbin {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

// Revised simplex state over a fixed column set. The basis inverse is kept
// dense and exact; pricing runs a floating-point screen first and confirms
// every candidate exactly, so the entering column is still the lowest index
// with a negative reduced cost.
class RevisedSimplex {
 public:
  RevisedSimplex(std::size_t rows, const std::vector<SparseColumn>& columns, std::vector<Rational> rhs,
                 std::vector<std::size_t> basis)
      : rows_(rows), columns_(columns), x_basic_(std::move(rhs)), basis_(std::move(basis)) {
    // Basis inverse starts as the inverse of the given basis matrix.
    std::vector<std::vector<Rational>> mat(rows_, std::vector<Rational>(rows_, Rational(0)));
    for (std::size_t r = 0; r < rows_; ++r) {
      for (const auto& [row, v] : columns_[basis_[r]]) mat[static_cast<std::size_t>(row)][r] = v;
    }
    inverse_ = invert(std::move(mat));
    std::vector<Rational> x(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < rows_; ++j) {
        if (inverse_[i][j] != 0) x[i] += inverse_[i][j] * x_basic_[j];
      }
    }
    x_basic_ = std::move(x);
    for (const auto& v : x_basic_) {
      if (v < 0) throw std::invalid_argument("initial basis is not primal feasible");
    }
  }

  /// Minimizes cost over the active columns [0, active).
  void optimize(const std::vector<std::int64_t>& cost, std::size_t active) {
    std::vector<char> in_basis(columns_.size(), 0);
    for (auto b : basis_) in_basis[b] = 1;
    while (true) {
      std::vector<Rational> y = duals(cost);
      std::vector<double> y_approx(rows_);
      for (std::size_t i = 0; i < rows_; ++i) y_approx[i] = y[i].convert_to<double>();
      std::size_t entering = npos;
      for (std::size_t j = 0; j < active; ++j) {
        if (in_basis[j]) continue;
        double approx = static_cast<double>(cost[j]);
        double mag = std::abs(approx);
        for (const auto& [row, v] : columns_[j]) {
          double term = y_approx[static_cast<std::size_t>(row)] * static_cast<double>(v);
          approx -= term;
          mag += std::abs(term);
        }
        if (approx > 1e-9 * (1.0 + mag)) continue;
        Rational reduced(cost[j]);
        for (const auto& [row, v] : columns_[j]) reduced -= y[static_cast<std::size_t>(row)] * v;
        if (reduced < 0) {
          entering = j;
          break;
        }
      }
      if (entering == npos) return;
      std::vector<Rational> u = ftran(entering);
      std::size_t leave = npos;
      Rational best_ratio;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (u[i] <= 0) continue;
        Rational ratio = x_basic_[i] / u[i];
        if (leave == npos || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == npos) throw LpUnbounded("linear program is unbounded");
      pivot(leave, entering, u);
      in_basis[basis_[leave]] = 0;
      in_basis[entering] = 1;
      basis_[leave] = entering;
    }
  }

  void pivot(std::size_t leave, std::size_t entering, const std::vector<Rational>& u) {
    (void)entering;
    Rational pivot_value = u[leave];
    for (std::size_t j = 0; j < rows_; ++j) {
      if (inverse_[leave][j] != 0) inverse_[leave][j] /= pivot_value;
    }
    x_basic_[leave] /= pivot_value;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == leave || u[i] == 0) continue;
      const Rational factor = u[i];
      for (std::size_t j = 0; j < rows_; ++j) {
        if (inverse_[leave][j] != 0) inverse_[i][j] -= factor * inverse_[leave][j];
      }
      x_basic_[i] -= factor * x_basic_[leave];
    }
    ++pivots_;
  }

  std::vector<Rational> ftran(std::size_t column) const {
    std::vector<Rational> u(rows_, Rational(0));
    for (const auto& [row, v] : columns_[column]) {
      auto r = static_cast<std::size_t>(row);
      for (std::size_t i = 0; i < rows_; ++i) {
        if (inverse_[i][r] != 0) u[i] += inverse_[i][r] * v;
      }
    }
    return u;
  }

  std::vector<Rational> duals(const std::vector<std::int64_t>& cost) const {
    std::vector<Rational> y(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i) {
      std::int64_t cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j < rows_; ++j) {
        if (inverse_[i][j] != 0) y[j] += inverse_[i][j] * cb;
      }
    }
    return y;
  }

  const std::vector<std::size_t>& basis() const { return basis_; }
  std::vector<std::size_t>& basis() { return basis_; }
  const std::vector<Rational>& x_basic() const { return x_basic_; }
  const std::vector<std::vector<Rational>>& inverse() const { return inverse_; }
  std::uint64_t pivots() const { return pivots_; }

 private:
  static std::vector<std::vector<Rational>> invert(std::vector<std::vector<Rational>> mat) {
    const std::size_t n = mat.size();
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t p = col;
      while (p < n && mat[p][col] == 0) ++p;
      if (p == n) throw std::invalid_argument("initial basis is singular");
      std::swap(mat[p], mat[col]);
      std::swap(inv[p], inv[col]);
      Rational d = mat[col][col];
      for (std::size_t j = 0; j < n; ++j) {
        mat[col][j] /= d;
        inv[col][j] /= d;
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (i == col || mat[i][col] == 0) continue;
        Rational f = mat[i][col];
        for (std::size_t j = 0; j < n; ++j) {
          mat[i][j] -= f * mat[col][j];
          inv[i][j] -= f * inv[col][j];
        }
      }
    }
    return inv;
  }

  std::size_t rows_;
  const std::vector<SparseColumn>& columns_;
  std::vector<Rational> x_basic_;
  std::vector<std::size_t> basis_;
  std::vector<std::vector<Rational>> inverse_;
  std::uint64_t pivots_ = 0;
};

}  // namespace

LpSolution solve_lp(const StandardLp& lp, std::optional<std::vector<std::size_t>> initial_basis) {
  const std::size_t m = lp.rows;
  const std::size_t t = lp.columns.size();
  if (lp.cost.size() != t) throw std::invalid_argument("cost vector length mismatch");
  if (lp.rhs.size() != m) throw std::invalid_argument("rhs length mismatch");
  for (const auto& b : lp.rhs) {
    if (b < 0) throw std::invalid_argument("rhs must be non-negative");
  }
  LpSolution out;
  if (m == 0) {
    out.x.assign(t, Rational(0));
    out.value = 0;
    return out;
  }

  std::vector<SparseColumn> columns = lp.columns;
  std::vector<std::int64_t> cost = lp.cost;
  std::vector<std::size_t> basis;
  std::uint64_t pivots = 0;

  if (initial_basis) {
    basis = *initial_basis;
    if (basis.size() != m) throw std::invalid_argument("initial basis has wrong size");
    RevisedSimplex simplex(m, columns, lp.rhs, basis);
    simplex.optimize(cost, t);
    basis = simplex.basis();
    out.x.assign(t, Rational(0));
    for (std::size_t i = 0; i < m; ++i) out.x[basis[i]] = simplex.x_basic()[i];
    pivots = simplex.pivots();
  } else {
    // Phase one: artificial identity columns appended after the real ones.
    std::vector<std::int64_t> phase_one(t + m, 0);
    for (std::size_t i = 0; i < m; ++i) {
      columns.push_back({{static_cast<std::int32_t>(i), 1}});
      phase_one[t + i] = 1;
      basis.push_back(t + i);
    }
    RevisedSimplex simplex(m, columns, lp.rhs, basis);
    simplex.optimize(phase_one, t + m);
    Rational infeasibility = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (simplex.basis()[i] >= t) infeasibility += simplex.x_basic()[i];
    }
    if (infeasibility != 0) throw LpInfeasible("linear program is infeasible");
    // Drive zero-valued artificials out of the basis where possible.
    for (std::size_t i = 0; i < m; ++i) {
      if (simplex.basis()[i] < t) continue;
      std::vector<char> in_basis(t, 0);
      for (auto b : simplex.basis()) {
        if (b < t) in_basis[b] = 1;
      }
      for (std::size_t j = 0; j < t; ++j) {
        if (in_basis[j]) continue;
        auto u = simplex.ftran(j);
        if (u[i] != 0) {
          simplex.pivot(i, j, u);
          simplex.basis()[i] = j;
          break;
        }
      }
      if (simplex.basis()[i] >= t) throw std::invalid_argument("constraint matrix is rank deficient");
    }
    std::vector<std::int64_t> phase_two = cost;
    phase_two.resize(t + m, 0);
    simplex.optimize(phase_two, t);
    basis = simplex.basis();
    out.x.assign(t, Rational(0));
    for (std::size_t i = 0; i < m; ++i) out.x[basis[i]] = simplex.x_basic()[i];
    pivots = simplex.pivots();
  }
  out.value = 0;
  for (std::size_t j = 0; j < t; ++j) {
    if (out.x[j] != 0) out.value += out.x[j] * lp.cost[j];
  }
  out.basis = std::move(basis);
  out.pivots = pivots;
  return out;
}

}  // namespace kbin
