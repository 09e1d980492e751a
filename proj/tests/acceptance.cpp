// Acceptance suite: one PASS/FAIL line per criterion. Tolerances and time
// limits are fixed below; every comparison except timing is exact.
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kbin/bench.hpp"
#include "kbin/configlp.hpp"
#include "kbin/electricity.hpp"
#include "kbin/exact.hpp"
#include "kbin/gen.hpp"
#include "kbin/heuristics.hpp"
#include "kbin/io.hpp"
#include "kbin/kopt.hpp"
#include "kbin/ptas.hpp"
#include "oracles.hpp"

using namespace kbin;

namespace {

// Wall-clock limits in seconds (0 = none).
constexpr double kLimitGoldens = 1.0;
constexpr double kLimitBench = 60.0;
constexpr double kLimitOracle = 300.0;
constexpr double kLimitKopt = 600.0;
constexpr double kLimitElectricity = 600.0;

constexpr std::size_t kBenchPerOpt = 63;  // 8 OPT values x 63 = 504 instances
constexpr int kOracleCorpus = 200;
constexpr int kSandwichCorpus = 100;
constexpr int kPtasCorpus = 50;

struct Check {
  bool ok = true;
  std::string first_failure;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) first_failure = what;
    ok = ok && cond;
  }
};

std::int64_t bins(const KPacking& p) { return static_cast<std::int64_t>(p.bin_count()); }

Instance random_small(std::mt19937_64& rng, std::size_t max_n) {
  std::uniform_int_distribution<std::size_t> count(1, max_n);
  std::uniform_int_distribution<std::int64_t> cap(10, 60);
  std::int64_t s = cap(rng);
  std::uniform_int_distribution<std::int64_t> size(1, s);
  std::vector<std::int64_t> sizes(count(rng));
  for (auto& x : sizes) x = size(rng);
  return Instance::from_integers(sizes, s);
}

Check goldens() {
  Check c;
  c.expect(bins(ffk(Instance::from_integers(std::vector<std::int64_t>{10, 20, 11}, 31), 2)) == 3, "ffk [10,20,11]");
  Instance r = ratio1375_instance();
  std::int64_t f = bins(ffk(r, 2));
  ExactResult o = opt_kbp(r, 2);
  c.expect(f == 11 && o.count == 8 && o.proven, "ratio1375 counts");
  c.expect(make_rational(f, o.count) == make_rational(11, 8), "ratio1375 ratio");
  Instance j = johnson_ff_instance();
  for (int k = 1; k <= 4; ++k) c.expect(bins(ffk(j, k)) == 17 + 10 * (k - 1), "johnson k=" + std::to_string(k));
  Instance d = ffd_lower_instance(make_rational(1, 1000));
  for (int k = 1; k <= 3; ++k) {
    c.expect(bins(ffdk(d, k)) == 8 + 7 * (k - 1), "ffd lower k=" + std::to_string(k));
    ExactResult e = opt_kbp(d, k);
    c.expect(e.count == 6 * k && e.proven && validate(d, e.packing).empty(), "ffd lower opt k=" + std::to_string(k));
  }
  Instance n = nf_lower_instance(10, make_rational(1, 20));
  for (int k = 1; k <= 2; ++k) c.expect(bins(nfk(n, k)) == 10 * k, "nf lower k=" + std::to_string(k));
  return c;
}

Check bench_bounds(std::string& note) {
  Check c;
  BenchSuite suite;
  suite.instances = kBenchPerOpt;
  BenchReport report = run_bench(suite);
  std::size_t ffk_v = 0, nfk_v = 0, ffdk_v = 0;
  for (const auto& row : report.rows) {
    c.expect(row.instances == kBenchPerOpt, "instance count");
    if (row.algorithm == Heuristic::FFk) ffk_v += row.violations;
    if (row.algorithm == Heuristic::NFk) nfk_v += row.violations;
    if (row.algorithm == Heuristic::FFDk) ffdk_v += row.violations;
  }
  c.expect(report.rows.size() == 8 * 4 * 3, "row count");
  c.expect(report.invalid() == 0, "invalid packings");
  c.expect(ffk_v == 0, "ffk violations");
  c.expect(nfk_v == 0, "nfk violations");
  c.expect(ffdk_v == 0, "ffdk conjecture violations");
  note = std::to_string(8 * kBenchPerOpt) + " instances; violations ffk=" + std::to_string(ffk_v) +
         " nfk=" + std::to_string(nfk_v) + " ffdk(conjecture)=" + std::to_string(ffdk_v);
  return c;
}

Check exact_oracle(std::string& note) {
  Check c;
  std::mt19937_64 rng(20240501);
  std::uniform_int_distribution<int> kd(1, 3);
  std::uint64_t nodes = 0;
  for (int i = 0; i < kOracleCorpus; ++i) {
    Instance inst = random_small(rng, 8);
    int k = kd(rng);
    ExactResult e = opt_kbp(inst, k);
    IntegerInstance ii = to_integer(inst);
    std::int64_t want = oracle::min_bins(ii.sizes, ii.capacity, k);
    c.expect(e.proven && e.count == want && validate(inst, e.packing).empty(), "instance " + std::to_string(i));
    nodes += e.nodes;
  }
  note = std::to_string(kOracleCorpus) + " instances, " + std::to_string(nodes) + " nodes";
  return c;
}

Check lp_sandwich(std::string& note) {
  Check c;
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> kd(1, 3);
  int tight = 0;
  for (int i = 0; i < kSandwichCorpus; ++i) {
    Instance inst = random_small(rng, 8);
    int k = kd(rng);
    ExactResult e = opt_kbp(inst, k);
    c.expect(e.proven, "opt not proven " + std::to_string(i));
    Rational lin = solve_fk(build_program(inst, k)).value;
    Rational lower = Rational(k) * volume(inst) / inst.capacity();
    std::set<Rational> distinct(inst.sizes().begin(), inst.sizes().end());
    Rational slack = Rational(static_cast<std::int64_t>(distinct.size()) + k) / 2;
    Rational opt(e.count);
    c.expect(lower <= lin, "V/S <= LIN at " + std::to_string(i));
    c.expect(lin <= opt, "LIN <= OPT at " + std::to_string(i));
    c.expect(opt <= lin + slack, "OPT <= LIN + (m+k)/2 at " + std::to_string(i));
    if (lin == opt) ++tight;
  }
  note = std::to_string(kSandwichCorpus) + " instances, LIN = OPT on " + std::to_string(tight);
  return c;
}

Check ptas_bounds(std::string& note) {
  Check c;
  std::int64_t max_iter = 0;
  for (int i = 0; i < kPtasCorpus; ++i) {
    std::int64_t opt = 2 + i % 10;
    GeneratedInstance g = generate_instance(100, opt, derive_seed(5, static_cast<std::uint64_t>(i)));
    const Instance& inst = g.instance;
    for (int k : {1, 2}) {
      const Rational best(k * opt);
      for (const Rational& eps : {make_rational(1, 2), make_rational(1, 4)}) {
        std::string tag = " i=" + std::to_string(i) + " k=" + std::to_string(k) + " eps=" + to_string(eps);
        PtasResult d = dlvl_kbp(inst, k, eps);
        c.expect(d.proven, "dlvl search budget" + tag);
        c.expect(validate(inst, d.packing).empty(), "dlvl packing" + tag);
        c.expect(Rational(bins(d.packing)) <= (1 + 2 * eps) * best + k, "dlvl bound" + tag);
        PtasResult p = kk1_kbp(inst, k, eps);
        c.expect(validate(inst, p.packing).empty(), "kk1 packing" + tag);
        c.expect(Rational(bins(p.packing)) <= (1 + 2 * k * eps) * best + 1 / (2 * eps * eps) + 2 * k + 1,
                 "kk1 bound" + tag);
      }
      PtasResult q = kk2_kbp(inst, k);
      c.expect(validate(inst, q.packing).empty(), "kk2 packing i=" + std::to_string(i));
      // Volume in units of S, so the bound does not depend on the scale of sizes.
      double v = to_double(volume(inst) / inst.capacity());
      double limit = std::log(v) / std::log(2.0) + 1;
      c.expect(static_cast<double>(q.iterations) <= limit, "kk2 iterations i=" + std::to_string(i));
      max_iter = std::max(max_iter, q.iterations);
    }
  }
  note = std::to_string(kPtasCorpus) + " instances, max kk2 iterations " + std::to_string(max_iter);
  return c;
}

Check optimal_k(std::string& note) {
  Check c;
  c.expect(egalitarian_fraction(Instance::from_integers(std::vector<std::int64_t>{2, 1, 1}, 3)).r_max ==
               make_rational(2, 3),
           "r_max [2,1,1]");
  KSearchResult t = find_optimal_k(Instance::from_integers(std::vector<std::int64_t>{11, 12, 13}, 25), 3);
  c.expect(t.table.size() == 3 && t.table[0].fraction == make_rational(1, 2) &&
               t.table[1].fraction == make_rational(2, 3) && t.table[2].fraction == make_rational(3, 5),
           "[11,12,13] table");
  c.expect(t.k_star == 2, "[11,12,13] k_star");
  for (std::int64_t n = 3; n <= 6; ++n) {
    KSearchResult u = find_optimal_k(unit_lowerbound_instance(n), static_cast<int>(n));
    c.expect(u.k_star == static_cast<int>(n - 1) && !u.inconclusive, "unit n=" + std::to_string(n));
  }
  KSearchResult k6 = find_optimal_k(k6_instance(), 9);
  c.expect(k6.r_max == make_rational(9, 17), "k6 r_max");
  c.expect(k6.k_star == 9 && !k6.inconclusive, "k6 k_star");
  c.expect(k6.table.size() == 9 && k6.table[8].opt == 17 && k6.table[8].proven, "k6 OPT(D_9)");
  for (const auto& row : k6.table) c.expect(row.proven, "k6 row proven k=" + std::to_string(row.k));
  note = "k6 r_max " + to_string(k6.r_max) + ", k_star " + (k6.k_star ? std::to_string(*k6.k_star) : "none");
  return c;
}

Check electricity(std::string& note) {
  Check c;
  DemandSeries series = synth_demands(367, 91, 1);
  c.expect(series.hours == 2184 && series.agents() == 367, "series shape");
  SimConfig cfg;
  cfg.k = 100;
  cfg.sd = 0.05;
  cfg.repeats = 9;
  cfg.algorithm = Heuristic::FFk;
  WelfareReport r = simulate(series, cfg);
  c.expect(r.connection_runs.size() == 9, "repeat count");
  for (const auto& run : r.connection_runs) {
    c.expect(run.max_difference == 0, "connection max difference");
    c.expect(run.minimum == run.average, "egalitarian equals average");
  }
  std::vector<double> supply = daily_supply(series);
  std::size_t drops = 0;
  for (std::size_t h = 0; h < series.hours; ++h) {
    Rational prev = 0;
    for (int k : {1, 2, 4, 8}) {
      Rational frac = schedule_hour(series.row(h), supply[h / kHoursPerDay], k, Heuristic::FFk).outcome.connection();
      if (frac < prev) ++drops;
      prev = frac;
    }
  }
  c.expect(drops == 0, "monotone k/q in k");
  note = "hours " + std::to_string(series.hours) + ", exclusions " + std::to_string(r.exclusions) +
         ", k/q drops " + std::to_string(drops);
  return c;
}

struct Run {
  int status = -1;
  std::string out;
};

Run run_cli(const std::string& threads, const std::string& args) {
  std::string cmd = "KBIN_THREADS=" + threads + " '" + std::string(KBIN_CLI_PATH) + "' " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

Check determinism(std::string& note) {
  Check c;
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / ("kbin_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::string inst = (dir / "gen.json").string();
  std::string small = (dir / "small.json").string();
  {
    std::ofstream(inst) << run_cli("1", "gen --mode random --S 100 --opt 4 --seed 7").out;
    std::ofstream(small) << R"({"capacity": 25, "sizes": [11, 12, 13]})";
  }
  std::vector<std::string> commands = {
      "gen --mode random --S 100 --opt 6 --seed 11",
      "gen --mode johnson",
      "gen --mode ratio1375",
      "gen --mode ffd-lower --delta 1/1000",
      "gen --mode nf-lower --y 10 --eps 1/20",
      "pack --instance " + inst + " --k 3 --algo ffk",
      "pack --instance " + inst + " --k 3 --algo ffdk",
      "pack --instance " + inst + " --k 3 --algo nfk",
      "exact --instance " + inst + " --k 2",
      "lp --algo dlvl --instance " + inst + " --k 2 --eps 1/4",
      "lp --algo kk1 --instance " + inst + " --k 2 --eps 1/4",
      "lp --algo kk2 --instance " + inst + " --k 2",
      "kopt --instance " + small + " --kmax 3",
      "schedule --synth 40 --days 14 --k 8 --repeats 3 --seed 5",
      "schedule --synth 40 --days 14 --k 8 --repeats 3 --seed 5 --relative --algo ffdk",
      "bench --instances 20 --seed 3",
  };
  int compared = 0;
  for (const auto& cmd : commands) {
    for (const char* fmt : {"json", "csv"}) {
      std::string args = cmd + " --format " + fmt;
      Run a = run_cli("8", args);
      Run b = run_cli("8", args);
      Run one = run_cli("1", args);
      c.expect(a.status == 0 && !a.out.empty(), "exit status: " + args);
      c.expect(a.out == b.out, "repeat differs: " + args);
      c.expect(a.out == one.out, "thread count differs: " + args);
      ++compared;
    }
  }
  fs::remove_all(dir);
  note = std::to_string(compared) + " invocations x 3 runs";
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit;
    std::function<Check(std::string&)> run;
  };
  std::vector<Criterion> criteria = {
      {1, "worked-example goldens", kLimitGoldens, [](std::string&) { return goldens(); }},
      {2, "heuristic bound suites", kLimitBench, bench_bounds},
      {3, "exact solver vs exhaustive oracle", kLimitOracle, exact_oracle},
      {4, "configuration LP sandwich", 0, lp_sandwich},
      {5, "approximation scheme bounds", 0, ptas_bounds},
      {6, "optimal-k analysis", kLimitKopt, optimal_k},
      {7, "electricity pipeline structure", kLimitElectricity, electricity},
      {8, "CLI determinism across runs and threads", 0, determinism},
  };
  int failed = 0;
  for (auto& cr : criteria) {
    std::string note;
    auto start = std::chrono::steady_clock::now();
    Check c;
    try {
      c = cr.run(note);
    } catch (const std::exception& e) {
      c.ok = false;
      c.first_failure = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cr.limit > 0 && secs > cr.limit) c.expect(false, "over time limit");
    std::ostringstream line;
    line << (c.ok ? "PASS" : "FAIL") << " " << cr.id << " " << cr.name << " (" << std::fixed;
    line.precision(2);
    line << secs << " s)";
    if (!note.empty()) line << " " << note;
    if (!c.ok) line << " first failure: " << c.first_failure;
    std::cout << line.str() << std::endl;
    if (!c.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
