#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "kbin/bench.hpp"
#include "kbin/gen.hpp"
#include "kbin/io.hpp"

using namespace kbin;

TEST_CASE("rational json forms") {
  CHECK(rational_to_json(make_rational(7)) == Json(7));
  Json half = rational_to_json(make_rational(1, 2));
  CHECK(half["num"] == 1);
  CHECK(half["den"] == 2);
  CHECK(rational_from_json(Json(3)) == 3);
  CHECK(rational_from_json(Json(0.25)) == make_rational(1, 4));
  CHECK(rational_from_json(Json("5/6")) == make_rational(5, 6));
  CHECK(rational_from_json(half) == make_rational(1, 2));
  Rational huge = parse_rational("123456789012345678901234567890/7");
  CHECK(rational_from_json(rational_to_json(huge)) == huge);
  CHECK_THROWS(rational_from_json(Json(true)));
}

TEST_CASE("instance and packing json round-trip") {
  Instance inst({make_rational(1, 3), make_rational(1, 2), make_rational(1, 6)}, make_rational(1));
  Instance back = instance_from_json(instance_to_json(inst));
  CHECK(back.sizes() == inst.sizes());
  CHECK(back.capacity() == inst.capacity());

  KPacking p{2, {{{{0, 1}, {1, 1}, {2, 1}}}, {{{0, 2}, {1, 2}, {2, 2}}}}};
  Json j = packing_to_json(p);
  CHECK(j["bin_count"] == 2);
  KPacking q = packing_from_json(j);
  CHECK(q.k == 2);
  REQUIRE(q.bins.size() == 2);
  CHECK(q.bins[1].contents.size() == 3);
  CHECK(q.bins[1].contents[2].item == 2);
  CHECK(q.bins[1].contents[2].copy == 2);

  CHECK_THROWS(instance_from_json(Json::parse(R"({"sizes":[1,2]})")));
  CHECK_THROWS(instance_from_json(Json::parse(R"({"capacity":3,"sizes":[4]})")));

  auto path = std::filesystem::temp_directory_path() / "kbin_io_instance.json";
  {
    std::ofstream out(path);
    out << R"({"capacity": 31, "sizes": [10, 20, 11]})";
  }
  Instance loaded = load_instance(path);
  CHECK(loaded.count() == 3);
  CHECK(loaded.capacity() == 31);
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  CHECK_THROWS(load_instance(path));
  std::filesystem::remove(path);
}

TEST_CASE("bench bounds") {
  CHECK(bin_bound(Heuristic::FFk, 2, 3) == make_rational(3, 2) * 6 + make_rational(1, 10) * 6 + 6);
  CHECK(bin_bound(Heuristic::NFk, 3, 4) == 25);
  CHECK(bin_bound(Heuristic::FFDk, 2, 9) == make_rational(11 * 18 + 6, 9));
  for (auto kind : {BoundKind::FfkTheorem, BoundKind::NfkTheorem, BoundKind::FfdkConjecture}) {
    CHECK(parse_bound_kind(to_string(kind)) == kind);
  }
}

TEST_CASE("bench report") {
  BenchSuite suite;
  suite.opts = {2, 5};
  suite.instances = 6;
  suite.ks = {2, 3};
  BenchReport report = run_bench(suite);
  CHECK(report.rows.size() == 2 * 2 * 3);
  CHECK(report.violations() == 0);
  CHECK(report.invalid() == 0);
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    const auto& a = report.rows[i - 1];
    const auto& b = report.rows[i];
    CHECK(std::make_tuple(a.opt, a.k, to_string(a.algorithm)) < std::make_tuple(b.opt, b.k, to_string(b.algorithm)));
  }
  for (const auto& row : report.rows) {
    CHECK(row.instances == 6);
    CHECK(Rational(row.max_bins) >= row.mean_bins);
    CHECK(row.mean_bins >= row.k * row.opt);
  }
  CHECK(bench_from_csv(bench_to_csv(report)).rows == report.rows);
  CHECK(bench_to_json(report)["rows"].size() == report.rows.size());
  CHECK_THROWS(bench_from_csv("wrong header\n"));
}

TEST_CASE("bench edge cases") {
  BenchSuite empty;
  empty.capacities.clear();
  BenchReport none = run_bench(empty);
  CHECK(none.rows.empty());
  CHECK(bench_to_csv(none) == "S,opt,k,algorithm,instances,max_bins,mean_bins,bound_kind,bound,violations,invalid\n");
  CHECK(bench_from_csv(bench_to_csv(none)).rows.empty());

  BenchSuite one;
  one.opts = {4};
  one.instances = 1;
  one.ks = {1};
  one.algorithms = {Heuristic::FFk};
  BenchReport r = run_bench(one);
  REQUIRE(r.rows.size() == 1);
  const std::uint64_t cell = derive_seed(derive_seed(one.seed, 100), 4);
  GeneratedInstance g = generate_instance(100, 4, derive_seed(cell, 0));
  auto bins = static_cast<std::int64_t>(ffk(g.instance, 1).bin_count());
  CHECK(r.rows[0].max_bins == bins);
  CHECK(r.rows[0].mean_bins == bins);

  BenchSuite bad;
  bad.ks = {0};
  CHECK_THROWS(run_bench(bad));
}
