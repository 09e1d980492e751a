#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "kbin/instance.hpp"

namespace kbin {

inline constexpr std::size_t kDefaultConfigCap = 5'000'000;

/// Multiplicity of every size class in one bin.
using Configuration = std::vector<std::int64_t>;

/// Every nonempty configuration a with a_i <= n_i and sum a_i c_i <= S,
/// in lexicographic order of the multiplicity vector. Throws
/// CapacityExceeded past `cap` configurations.
std::vector<Configuration> enumerate_configs(const SizeClasses& classes, const Rational& capacity,
                                             std::size_t cap = kDefaultConfigCap);

/// The configuration program F_k: minimize 1.x subject to A x = k n, x >= 0.
struct ConfigProgram {
  SizeClasses classes;
  Rational capacity;
  int k = 1;
  std::vector<Configuration> configs;

  /// Index of the configuration holding a single item of class i.
  std::size_t singleton(std::size_t cls) const;
};

ConfigProgram build_program(SizeClasses classes, Rational capacity, int k, std::size_t cap = kDefaultConfigCap);
ConfigProgram build_program(const Instance& instance, int k, std::size_t cap = kDefaultConfigCap);

struct FractionalSolution {
  std::vector<Rational> x;
  Rational value;
  std::vector<std::size_t> basis;
  std::uint64_t pivots = 0;

  /// Indices j with x_j > 0.
  std::vector<std::size_t> support() const;
};

/// Exact optimum of F_k, started from the basis of singleton configurations.
FractionalSolution solve_fk(const ConfigProgram& program);

/// Turns configuration counts into bins. Each class serves its members
/// through a queue holding copy 1 of every member, then copy 2, and so on;
/// a configuration takes a_i entries from the front of queue i. Requires
/// A counts >= k n; slots beyond the demand stay empty and bins left empty
/// are dropped.
KPacking realize_integral(const ConfigProgram& program, std::span<const std::int64_t> counts);

struct RoundingResult {
  KPacking packing;
  std::int64_t floor_bins = 0;
  std::int64_t residual_bins = 0;
  /// 1.x + (m + k) / 2.
  Rational bound;
};

/// Floors x, realizes the floors, then packs the residual instance with the
/// best of: one bin per fractional configuration, FFk, and first-fit per
/// copy layer.
RoundingResult round_to_integral(const ConfigProgram& program, const FractionalSolution& solution);

}  // namespace kbin
