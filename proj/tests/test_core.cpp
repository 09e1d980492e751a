#include <random>

#include "doctest.h"
#include "kbin/exact.hpp"
#include "kbin/first_fit.hpp"
#include "kbin/gen.hpp"
#include "kbin/heuristics.hpp"
#include "kbin/instance.hpp"
#include "oracles.hpp"

using namespace kbin;

namespace {

Instance ints(std::vector<std::int64_t> sizes, std::int64_t capacity) {
  return Instance::from_integers(sizes, capacity);
}

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/4") == make_rational(3, 4));
  CHECK(parse_rational("6/8") == make_rational(3, 4));
  CHECK(parse_rational("-2") == make_rational(-2));
  CHECK(parse_rational("0.25") == make_rational(1, 4));
  CHECK(parse_rational(".5") == make_rational(1, 2));
  CHECK(parse_rational("1e-3") == make_rational(1, 1000));
  CHECK(parse_rational("2.5E2") == make_rational(250));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
  CHECK_THROWS(parse_rational(""));
  CHECK(to_string(make_rational(6, 4)) == "3/2");
  CHECK(to_string(make_rational(5)) == "5");
  CHECK(from_double(0.375) == make_rational(3, 8));
  CHECK(ceil_to_int64(make_rational(7, 3)) == 3);
  CHECK(floor_to_int64(make_rational(7, 3)) == 2);
}

TEST_CASE("instance construction rejects bad data") {
  CHECK_THROWS_AS(ints({}, 5), std::invalid_argument);
  CHECK_THROWS_AS(ints({0, 1}, 5), std::invalid_argument);
  CHECK_THROWS_AS(ints({6}, 5), std::invalid_argument);
  CHECK_THROWS_AS(ints({1}, 0), std::invalid_argument);
  CHECK_NOTHROW(ints({5}, 5));
}

TEST_CASE("integer scaling keeps sizes exact") {
  Instance inst({make_rational(1, 2), make_rational(1, 3)}, make_rational(1));
  IntegerInstance ii = to_integer(inst);
  CHECK(ii.capacity == 6);
  CHECK(ii.sizes == std::vector<std::int64_t>{3, 2});
  Instance huge({make_rational(1, 1LL << 40), make_rational(1, (1LL << 40) - 1)}, make_rational(1));
  CHECK_THROWS_AS(to_integer(huge), std::overflow_error);
}

TEST_CASE("validate reports every violation kind") {
  Instance inst = ints({2, 1, 1}, 3);
  KPacking ok{2, {{{{0, 1}, {1, 1}}}, {{{0, 2}, {2, 1}}}, {{{1, 2}, {2, 2}}}}};
  CHECK(validate(inst, ok).empty());

  KPacking overfull{1, {{{{0, 1}, {1, 1}, {2, 1}}}}};
  auto v = validate(inst, overfull);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == Violation::Kind::Overfull);

  KPacking dup{2, {{{{1, 1}, {1, 2}}}, {{{0, 1}}}, {{{0, 2}}}, {{{2, 1}}}, {{{2, 2}}}}};
  v = validate(inst, dup);
  REQUIRE(!v.empty());
  CHECK(v[0].kind == Violation::Kind::DuplicateItem);

  KPacking missing{2, {{{{0, 1}}}, {{{0, 2}}}, {{{1, 1}}}, {{{2, 1}, {1, 2}}}}};
  v = validate(inst, missing);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == Violation::Kind::WrongCopyCount);
  CHECK(v[0].item == 2);

  KPacking unknown{1, {{{{7, 1}}}}};
  bool saw_unknown = false;
  for (const auto& x : validate(inst, unknown)) saw_unknown |= x.kind == Violation::Kind::UnknownItem;
  CHECK(saw_unknown);

  KPacking bad_copy{1, {{{{0, 2}, {1, 1}}}, {{{2, 1}}}}};
  bool saw_bad = false;
  for (const auto& x : validate(inst, bad_copy)) saw_bad |= x.kind == Violation::Kind::BadCopyIndex;
  CHECK(saw_bad);
}

TEST_CASE("replicate and classes") {
  Instance inst = ints({4, 2, 5, 3, 2, 1}, 9);
  auto dk = replicate(inst, 2);
  REQUIRE(dk.size() == 12);
  CHECK(dk[0] == ItemCopy{0, 1});
  CHECK(dk[6] == ItemCopy{0, 2});
  CHECK_THROWS(replicate(inst, 0));
  SizeClasses sc = size_classes(inst);
  CHECK(sc.m() == 5);
  CHECK(sc.sizes.front() == 5);
  CHECK(sc.counts[3] == 2);
  CHECK(sc.members[3] == std::vector<ItemId>{1, 4});
  CHECK(volume(inst) == 17);
  CHECK(bin_lower_bound(inst, 9) == 17);
  CHECK(bin_lower_bound(ints({1}, 10), 3) == 3);
}

TEST_CASE("first-fit examples") {
  CHECK(ffk(ints({10, 20, 11}, 31), 2).bin_count() == 3);
  CHECK(ffk(ints({5}, 9), 3).bin_count() == 3);
  CHECK(ffk(ints({1, 1, 1}, 10), 1).bin_count() == 1);
  auto p = ffk(ints({2, 1, 1}, 3), 2);
  CHECK(validate(ints({2, 1, 1}, 3), p).empty());
  CHECK_THROWS(ffk(ints({1}, 2), 0));
}

TEST_CASE("first-fit decreasing and next-fit examples") {
  Instance inst = ints({1, 2, 3}, 3);
  auto p = ffdk(inst, 1);
  CHECK(p.bin_count() == 2);
  CHECK(p.bins[0].contents[0].item == 2);
  CHECK(nfk(ints({2, 1, 1}, 3), 1).bin_count() == 2);
  CHECK(nfk(ints({1, 1}, 5), 2).bin_count() == 2);
  Instance nf = nf_lower_instance(10, make_rational(1, 20));
  CHECK(nfk(nf, 2).bin_count() == 20);
}

TEST_CASE("heuristic names round-trip") {
  for (auto h : {Heuristic::FFk, Heuristic::FFDk, Heuristic::NFk}) CHECK(parse_heuristic(to_string(h)) == h);
  CHECK_THROWS(parse_heuristic("bfk"));
}

TEST_CASE("segment-tree first fit matches a plain scan") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    std::uniform_int_distribution<int> nd(1, 25);
    std::int64_t capacity = std::uniform_int_distribution<std::int64_t>(5, 60)(rng);
    std::size_t n = static_cast<std::size_t>(nd(rng));
    std::vector<std::int64_t> sizes(n);
    for (auto& s : sizes) s = std::uniform_int_distribution<std::int64_t>(1, capacity)(rng);
    int k = std::uniform_int_distribution<int>(1, 6)(rng);
    Instance inst = Instance::from_integers(sizes, capacity);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    auto ref = oracle::first_fit_scan(sizes, capacity, k, order);
    KPacking got = ffk(inst, k);
    REQUIRE(got.bin_count() == ref.size());
    for (std::size_t b = 0; b < ref.size(); ++b) {
      std::vector<std::int32_t> ids;
      for (const auto& c : got.bins[b].contents) ids.push_back(c.item);
      CHECK(ids == ref[b]);
    }
    CHECK(validate(inst, got).empty());
    CHECK(validate(inst, ffdk(inst, k)).empty());
    CHECK(validate(inst, nfk(inst, k)).empty());
  }
}

TEST_CASE("first-fit packer accepts pre-built bins") {
  FirstFitPacker packer(10, 4);
  std::vector<std::int64_t> sizes{6, 3, 2, 5};
  packer.add_bin(Bin{{{0, 1}, {1, 1}}}, sizes);
  CHECK(packer.load(0) == 9);
  CHECK(packer.place({2, 1}, 2) == 1);
  CHECK(packer.place({1, 2}, 3) == 1);
  CHECK(packer.place({3, 1}, 5) == 1);
  CHECK(packer.bin_count() == 2);
}

TEST_CASE("exact solver examples") {
  CHECK(opt_kbp(ints({10, 20, 11}, 31), 2).count == 3);
  CHECK(opt_kbp(ints({2, 1, 1}, 3), 2).count == 3);
  CHECK(opt_kbp(ints({2, 1, 1}, 3), 1).count == 2);
  CHECK(opt_kbp(ints({5}, 9), 4).count == 4);
  auto r = opt_kbp(ints({11, 12, 13}, 25), 3);
  CHECK(r.count == 5);
  CHECK(r.proven);
  CHECK(validate(ints({11, 12, 13}, 25), r.packing).empty());
  CHECK(opt_bp(ratio1375_instance()).count == 4);
  CHECK_THROWS(opt_kbp(ints({1}, 2), 1, 0));
}

TEST_CASE("exact solver reports an exhausted budget") {
  GeneratedInstance g = generate_instance(100, 6, 11);
  ExactResult r = opt_kbp(g.instance, 3, 1);
  CHECK(validate(g.instance, r.packing).empty());
  CHECK(r.count >= 18);
  if (r.count > 18) CHECK_FALSE(r.proven);
}

TEST_CASE("exact solver agrees with the dynamic-programming oracle") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = static_cast<std::size_t>(std::uniform_int_distribution<int>(1, 7)(rng));
    std::int64_t capacity = std::uniform_int_distribution<std::int64_t>(4, 30)(rng);
    std::vector<std::int64_t> sizes(n);
    for (auto& s : sizes) s = std::uniform_int_distribution<std::int64_t>(1, capacity)(rng);
    int k = std::uniform_int_distribution<int>(1, 3)(rng);
    Instance inst = Instance::from_integers(sizes, capacity);
    ExactResult r = opt_kbp(inst, k);
    REQUIRE(r.proven);
    CHECK(r.count == oracle::min_bins(sizes, capacity, k));
    CHECK(validate(inst, r.packing).empty());
    CHECK(static_cast<std::int64_t>(r.packing.bin_count()) == r.count);
  }
}
