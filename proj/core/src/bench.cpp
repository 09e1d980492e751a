#include "kbin/bench.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "kbin/gen.hpp"
#include "kbin/parallel.hpp"

namespace kbin {

std::string_view to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::FfkTheorem: return "ffk-theorem";
    case BoundKind::NfkTheorem: return "nfk-theorem";
    case BoundKind::FfdkConjecture: return "ffdk-conjecture";
  }
  return "?";
}

BoundKind parse_bound_kind(std::string_view name) {
  for (auto kind : {BoundKind::FfkTheorem, BoundKind::NfkTheorem, BoundKind::FfdkConjecture}) {
    if (to_string(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown bound kind: " + std::string(name));
}

BoundKind bound_kind(Heuristic algo) {
  switch (algo) {
    case Heuristic::FFk: return BoundKind::FfkTheorem;
    case Heuristic::NFk: return BoundKind::NfkTheorem;
    case Heuristic::FFDk: return BoundKind::FfdkConjecture;
  }
  throw std::invalid_argument("unknown heuristic");
}

Rational bin_bound(Heuristic algo, int k, std::int64_t opt) {
  const Rational kopt(BigInt(k) * opt);
  switch (algo) {
    case Heuristic::FFk:
      return (Rational(BigInt(3), BigInt(2)) + Rational(BigInt(1), BigInt(5 * k))) * kopt + 3 * k;
    case Heuristic::NFk: return 2 * kopt + 1;
    case Heuristic::FFDk: return (11 * kopt + 6) / 9;
  }
  throw std::invalid_argument("unknown heuristic");
}

std::size_t BenchReport::violations() const {
  std::size_t v = 0;
  for (const auto& r : rows) v += r.violations;
  return v;
}

std::size_t BenchReport::invalid() const {
  std::size_t v = 0;
  for (const auto& r : rows) v += r.invalid;
  return v;
}

BenchReport run_bench(const BenchSuite& suite) {
  for (int k : suite.ks) require_k(k);
  std::vector<std::pair<std::int64_t, std::int64_t>> cells;
  for (auto s : suite.capacities) {
    for (auto o : suite.opts) cells.emplace_back(s, o);
  }
  std::vector<std::vector<BenchRow>> per_cell(cells.size());
  parallel_for(cells.size(), [&](std::size_t ci) {
    auto [capacity, opt] = cells[ci];
    std::vector<BenchRow> rows;
    for (int k : suite.ks) {
      for (auto algo : suite.algorithms) {
        BenchRow row;
        row.capacity = capacity;
        row.opt = opt;
        row.k = k;
        row.algorithm = algo;
        row.bound_kind = bound_kind(algo);
        row.bound = bin_bound(algo, k, opt);
        row.mean_bins = 0;
        rows.push_back(row);
      }
    }
    const std::uint64_t cell_seed =
        derive_seed(derive_seed(suite.seed, static_cast<std::uint64_t>(capacity)), static_cast<std::uint64_t>(opt));
    for (std::size_t i = 0; i < suite.instances; ++i) {
      GeneratedInstance g = generate_instance(capacity, opt, derive_seed(cell_seed, i));
      IntegerInstance ints = to_integer(g.instance);
      for (auto& row : rows) {
        KPacking p = run_heuristic(row.algorithm, ints, row.k);
        auto bins = static_cast<std::int64_t>(p.bin_count());
        if (!validate(g.instance, p).empty()) ++row.invalid;
        if (Rational(bins) > row.bound) ++row.violations;
        row.max_bins = std::max(row.max_bins, bins);
        row.mean_bins += bins;
        ++row.instances;
      }
    }
    for (auto& row : rows) {
      if (row.instances > 0) row.mean_bins /= static_cast<std::int64_t>(row.instances);
    }
    per_cell[ci] = std::move(rows);
  });
  BenchReport report;
  for (auto& rows : per_cell) {
    for (auto& r : rows) report.rows.push_back(std::move(r));
  }
  std::sort(report.rows.begin(), report.rows.end(), [](const BenchRow& a, const BenchRow& b) {
    return std::make_tuple(a.capacity, a.opt, a.k, to_string(a.algorithm)) <
           std::make_tuple(b.capacity, b.opt, b.k, to_string(b.algorithm));
  });
  return report;
}

namespace {
constexpr const char* kHeader = "S,opt,k,algorithm,instances,max_bins,mean_bins,bound_kind,bound,violations,invalid";
}

std::string bench_to_csv(const BenchReport& report) {
  std::string out = std::string(kHeader) + "\n";
  for (const auto& r : report.rows) {
    out += std::to_string(r.capacity) + "," + std::to_string(r.opt) + "," + std::to_string(r.k) + "," +
           std::string(to_string(r.algorithm)) + "," + std::to_string(r.instances) + "," +
           std::to_string(r.max_bins) + "," + to_string(r.mean_bins) + "," + std::string(to_string(r.bound_kind)) +
           "," + to_string(r.bound) + "," + std::to_string(r.violations) + "," + std::to_string(r.invalid) + "\n";
  }
  return out;
}

BenchReport bench_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kHeader) throw std::invalid_argument("unexpected bench CSV header");
  BenchReport report;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::istringstream fields(line);
    for (std::string cell; std::getline(fields, cell, ',');) f.push_back(cell);
    if (f.size() != 11) throw std::invalid_argument("bench CSV row has wrong field count");
    BenchRow r;
    r.capacity = std::stoll(f[0]);
    r.opt = std::stoll(f[1]);
    r.k = std::stoi(f[2]);
    r.algorithm = parse_heuristic(f[3]);
    r.instances = std::stoull(f[4]);
    r.max_bins = std::stoll(f[5]);
    r.mean_bins = parse_rational(f[6]);
    r.bound_kind = parse_bound_kind(f[7]);
    r.bound = parse_rational(f[8]);
    r.violations = std::stoull(f[9]);
    r.invalid = std::stoull(f[10]);
    report.rows.push_back(std::move(r));
  }
  return report;
}

Json bench_to_json(const BenchReport& report) {
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    Json j = Json::object();
    j["S"] = r.capacity;
    j["opt"] = r.opt;
    j["k"] = r.k;
    j["algorithm"] = std::string(to_string(r.algorithm));
    j["instances"] = r.instances;
    j["max_bins"] = r.max_bins;
    j["mean_bins"] = rational_to_json(r.mean_bins);
    j["bound_kind"] = std::string(to_string(r.bound_kind));
    j["bound"] = rational_to_json(r.bound);
    j["violations"] = r.violations;
    j["invalid"] = r.invalid;
    rows.push_back(std::move(j));
  }
  Json out = Json::object();
  out["rows"] = std::move(rows);
  out["violations"] = report.violations();
  out["invalid"] = report.invalid();
  return out;
}

}  // namespace kbin
