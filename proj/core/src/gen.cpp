#include "kbin/gen.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace kbin {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

std::vector<std::int64_t> draw_items(std::int64_t capacity, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> dist(1, capacity - 1);
  std::vector<std::int64_t> out;
  std::int64_t sum = 0;
  while (true) {
    std::int64_t r = dist(rng);
    if (sum + r > capacity) {
      // The remainder is zero when the list already fills S exactly.
      if (capacity - sum > 0) out.push_back(capacity - sum);
      return out;
    }
    out.push_back(r);
    sum += r;
  }
}

}  // namespace

std::vector<std::int64_t> generate_items(std::int64_t capacity, std::uint64_t seed) {
  if (capacity <= 1) throw std::invalid_argument("S must exceed 1");
  std::mt19937_64 rng(seed);
  return draw_items(capacity, rng);
}

GeneratedInstance generate_instance(std::int64_t capacity, std::int64_t opt, std::uint64_t seed) {
  if (capacity <= 1) throw std::invalid_argument("S must exceed 1");
  if (opt < 1) throw std::invalid_argument("opt must be positive");
  std::mt19937_64 rng(seed);
  std::vector<std::int64_t> sizes;
  std::vector<std::size_t> batch_of;
  for (std::int64_t b = 0; b < opt; ++b) {
    for (auto s : draw_items(capacity, rng)) {
      sizes.push_back(s);
      batch_of.push_back(static_cast<std::size_t>(b));
    }
  }
  std::vector<std::size_t> perm(sizes.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::int64_t> shuffled(sizes.size());
  std::vector<std::vector<ItemId>> certificate(static_cast<std::size_t>(opt));
  for (std::size_t pos = 0; pos < perm.size(); ++pos) {
    shuffled[pos] = sizes[perm[pos]];
    certificate[batch_of[perm[pos]]].push_back(static_cast<ItemId>(pos));
  }
  return {Instance::from_integers(shuffled, capacity), std::move(certificate), opt};
}

Instance johnson_ff_instance() {
  std::vector<std::int64_t> sizes;
  for (auto [size, count] : {std::pair{6, 7}, {10, 7}, {16, 3}, {34, 10}, {51, 10}}) {
    sizes.insert(sizes.end(), static_cast<std::size_t>(count), size);
  }
  return Instance::from_integers(sizes, 101);
}

Instance ratio1375_instance() {
  const std::vector<std::int64_t> sizes{371, 659, 113, 47, 485, 3, 228, 419, 468, 581, 626};
  return Instance::from_integers(sizes, 1000);
}

Instance ffd_lower_instance(const Rational& delta) {
  if (delta <= 0 || delta >= Rational(BigInt(1), BigInt(100))) {
    throw std::invalid_argument("delta must lie in (0, 1/100)");
  }
  const Rational half(BigInt(1), BigInt(2));
  const Rational quarter(BigInt(1), BigInt(4));
  std::vector<Rational> sizes;
  for (int i = 0; i < 4; ++i) sizes.push_back(half + delta);
  for (int i = 0; i < 4; ++i) sizes.push_back(quarter + 2 * delta);
  for (int i = 0; i < 4; ++i) sizes.push_back(quarter + delta);
  for (int i = 0; i < 8; ++i) sizes.push_back(quarter - 2 * delta);
  return Instance(std::move(sizes), Rational(1));
}

Instance nf_lower_instance(std::int64_t y, const Rational& eps) {
  if (y < 2 || y % 2 != 0) throw std::invalid_argument("y must be a positive even integer");
  if (eps <= 0 || eps * y >= 1) throw std::invalid_argument("eps must lie in (0, 1/y)");
  std::vector<Rational> sizes;
  for (std::int64_t i = 0; i < y; ++i) {
    sizes.emplace_back(BigInt(1), BigInt(2));
    sizes.push_back(eps);
  }
  return Instance(std::move(sizes), Rational(1));
}

}  // namespace kbin
