#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "kbin/bench.hpp"
#include "kbin/electricity.hpp"
#include "kbin/exact.hpp"
#include "kbin/gen.hpp"
#include "kbin/heuristics.hpp"
#include "kbin/io.hpp"
#include "kbin/kopt.hpp"
#include "kbin/ptas.hpp"

using namespace kbin;

namespace {

constexpr int kExitError = 1;
constexpr int kExitViolation = 2;

struct Format {
  std::string value = "json";
  bool csv() const { return value == "csv"; }
};

void add_format(CLI::App* app, Format& format) {
  app->add_option("--format", format.value, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::string packing_csv(const KPacking& packing) {
  std::string out = "bin,item,copy\n";
  for (std::size_t b = 0; b < packing.bins.size(); ++b) {
    for (const auto& c : packing.bins[b].contents) {
      out += std::to_string(b) + "," + std::to_string(c.item) + "," + std::to_string(c.copy) + "\n";
    }
  }
  return out;
}

Json violations_json(const std::vector<Violation>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x.kind) + ": " + x.detail);
  return out;
}

Json welfare_json(const ModelSummary& m) {
  auto metric = [](const MetricSummary& s) {
    Json j = Json::object();
    j["mean"] = s.mean;
    j["sd"] = s.sd;
    return j;
  };
  Json j = Json::object();
  j["utilitarian_sum"] = metric(m.sum);
  j["utilitarian_average"] = metric(m.average);
  j["egalitarian"] = metric(m.minimum);
  j["max_difference"] = metric(m.max_difference);
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-times bin packing tools"};
  app.require_subcommand(1);

  // pack
  auto* pack = app.add_subcommand("pack", "Pack D_k with a greedy heuristic");
  std::string pack_instance, pack_algo = "ffk";
  int pack_k = 1;
  Format pack_format;
  pack->add_option("--instance", pack_instance, "Instance JSON")->required();
  pack->add_option("--k", pack_k, "Copies per item")->check(CLI::PositiveNumber);
  pack->add_option("--algo", pack_algo)->check(CLI::IsMember({"ffk", "ffdk", "nfk"}));
  add_format(pack, pack_format);

  // exact
  auto* exact = app.add_subcommand("exact", "Optimal k-packing by branch and bound");
  std::string exact_instance;
  int exact_k = 1;
  std::uint64_t exact_budget = kDefaultNodeBudget;
  Format exact_format;
  exact->add_option("--instance", exact_instance)->required();
  exact->add_option("--k", exact_k)->check(CLI::PositiveNumber);
  exact->add_option("--budget", exact_budget, "Node budget")->check(CLI::PositiveNumber);
  add_format(exact, exact_format);

  // lp
  auto* lp = app.add_subcommand("lp", "Configuration-LP approximation schemes");
  std::string lp_instance, lp_algo = "kk1", lp_eps_text;
  int lp_k = 1;
  std::int64_t lp_g = 2;
  std::uint64_t lp_budget = 1'000'000;
  Format lp_format;
  lp->add_option("--instance", lp_instance)->required();
  lp->add_option("--algo", lp_algo)->check(CLI::IsMember({"dlvl", "kk1", "kk2"}));
  lp->add_option("--k", lp_k)->check(CLI::PositiveNumber);
  lp->add_option("--eps", lp_eps_text, "Accuracy as p/q");
  lp->add_option("--g", lp_g, "Geometric grouping parameter (kk2)");
  lp->add_option("--budget", lp_budget, "Node budget for the OPT reference")->check(CLI::PositiveNumber);
  add_format(lp, lp_format);

  // kopt
  auto* kopt = app.add_subcommand("kopt", "Egalitarian fraction and smallest optimal k");
  std::string kopt_instance;
  int kopt_kmax = 1;
  std::uint64_t kopt_budget = kDefaultNodeBudget;
  Format kopt_format;
  kopt->add_option("--instance", kopt_instance)->required();
  kopt->add_option("--kmax", kopt_kmax)->check(CLI::PositiveNumber)->required();
  kopt->add_option("--budget", kopt_budget)->check(CLI::PositiveNumber);
  add_format(kopt, kopt_format);

  // schedule
  auto* schedule = app.add_subcommand("schedule", "Electricity scheduling simulation");
  std::string demands_path, schedule_algo = "ffk";
  std::size_t synth_households = 0, synth_days = 7;
  SimConfig sim;
  bool relative = false;
  Format schedule_format;
  auto* demands_opt = schedule->add_option("--demands", demands_path, "Demand CSV");
  auto* synth_opt = schedule->add_option("--synth", synth_households, "Synthesize this many households instead");
  demands_opt->excludes(synth_opt);
  schedule->add_option("--days", synth_days, "Days to synthesize")->check(CLI::PositiveNumber);
  schedule->add_option("--k", sim.k)->check(CLI::PositiveNumber);
  schedule->add_option("--algo", schedule_algo)->check(CLI::IsMember({"ffk", "ffdk"}));
  schedule->add_option("--sd", sim.sd)->check(CLI::NonNegativeNumber);
  schedule->add_flag("--relative", relative, "Noise sd relative to each demand");
  schedule->add_option("--repeats", sim.repeats)->check(CLI::PositiveNumber);
  schedule->add_option("--seed", sim.seed);
  add_format(schedule, schedule_format);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate instances");
  std::string gen_mode = "random", gen_delta = "1/1000", gen_eps = "1/20";
  std::int64_t gen_s = 100, gen_opt = 2, gen_y = 10;
  std::uint64_t gen_seed = 1;
  Format gen_format;
  gen->add_option("--mode", gen_mode)->check(CLI::IsMember({"random", "johnson", "ratio1375", "ffd-lower", "nf-lower"}));
  gen->add_option("--S", gen_s);
  gen->add_option("--opt", gen_opt);
  gen->add_option("--seed", gen_seed);
  gen->add_option("--delta", gen_delta);
  gen->add_option("--y", gen_y);
  gen->add_option("--eps", gen_eps);
  add_format(gen, gen_format);

  // bench
  auto* bench = app.add_subcommand("bench", "Heuristics against known-OPT instances");
  BenchSuite suite;
  std::vector<std::string> bench_algos{"ffk", "ffdk", "nfk"};
  bool strict = false;
  Format bench_format;
  bench->add_option("--S", suite.capacities, "Capacities");
  bench->add_option("--opt", suite.opts, "OPT values");
  bench->add_option("--instances", suite.instances, "Instances per (S, OPT) cell");
  bench->add_option("--k", suite.ks, "k values");
  bench->add_option("--algos", bench_algos)->check(CLI::IsMember({"ffk", "ffdk", "nfk"}));
  bench->add_option("--seed", suite.seed);
  bench->add_flag("--strict", strict, "Exit with status 2 on any bound violation");
  add_format(bench, bench_format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? EXIT_SUCCESS : kExitError;
  }

  try {
    if (*pack) {
      Instance inst = load_instance(pack_instance);
      KPacking p = run_heuristic(parse_heuristic(pack_algo), inst, pack_k);
      if (pack_format.csv()) {
        std::cout << packing_csv(p);
      } else {
        Json out = Json::object();
        out["algorithm"] = pack_algo;
        out["k"] = pack_k;
        out["bins"] = p.bin_count();
        out["lower_bound"] = bin_lower_bound(inst, pack_k);
        out["violations"] = violations_json(validate(inst, p));
        out["packing"] = packing_to_json(p);
        print_json(out);
      }
    } else if (*exact) {
      Instance inst = load_instance(exact_instance);
      ExactResult r = opt_kbp(inst, exact_k, exact_budget);
      if (exact_format.csv()) {
        std::cout << packing_csv(r.packing);
      } else {
        Json out = Json::object();
        out["k"] = exact_k;
        out["count"] = r.count;
        out["proven"] = r.proven;
        out["nodes"] = r.nodes;
        out["packing"] = packing_to_json(r.packing);
        print_json(out);
      }
    } else if (*lp) {
      Instance inst = load_instance(lp_instance);
      std::optional<Rational> eps;
      if (!lp_eps_text.empty()) eps = parse_rational(lp_eps_text);
      if (lp_algo != "kk2" && !eps) eps = Rational(BigInt(1), BigInt(4));
      PtasResult r = lp_algo == "dlvl" ? dlvl_kbp(inst, lp_k, *eps)
                     : lp_algo == "kk1" ? kk1_kbp(inst, lp_k, *eps)
                                        : kk2_kbp(inst, lp_k, eps, lp_g);
      ExactResult reference = opt_kbp(inst, lp_k, lp_budget);
      Rational reference_value = reference.proven ? Rational(reference.count) : Rational(bin_lower_bound(inst, lp_k));
      auto bins = static_cast<std::int64_t>(r.packing.bin_count());
      Json report = Json::object();
      report["bins"] = bins;
      report["opt_or_lower_bound"] = rational_to_json(reference_value);
      report["opt_proven"] = reference.proven;
      if (lp_algo == "kk2") {
        report["iterations"] = r.iterations;
        report["iteration_bound"] = r.iteration_bound;
        report["theorem_bound"] = nullptr;
        report["satisfied"] = static_cast<double>(r.iterations) <= r.iteration_bound;
      } else {
        const Rational& e = *eps;
        Rational bound = lp_algo == "dlvl"
                             ? (1 + 2 * e) * reference_value + lp_k
                             : (1 + 2 * lp_k * e) * reference_value + Rational(1) / (2 * e * e) + 2 * lp_k + 1;
        report["theorem_bound"] = rational_to_json(bound);
        // With only a lower bound on OPT a pass is conclusive, a miss is not.
        if (Rational(bins) <= bound) {
          report["satisfied"] = true;
        } else if (reference.proven) {
          report["satisfied"] = false;
        } else {
          report["satisfied"] = nullptr;
        }
      }
      if (lp_format.csv()) {
        std::cout << packing_csv(r.packing);
      } else {
        Json out = Json::object();
        out["algorithm"] = lp_algo;
        out["k"] = lp_k;
        if (eps) out["eps"] = rational_to_json(*eps);
        if (r.lp_value) out["lp_value"] = rational_to_json(*r.lp_value);
        out["proven"] = r.proven;
        out["report"] = report;
        out["violations"] = violations_json(validate(inst, r.packing));
        out["packing"] = packing_to_json(r.packing);
        print_json(out);
      }
    } else if (*kopt) {
      Instance inst = load_instance(kopt_instance);
      KSearchResult r = find_optimal_k(inst, kopt_kmax, kopt_budget);
      if (kopt_format.csv()) {
        std::cout << "k,opt,fraction,proven\n";
        for (const auto& row : r.table) {
          std::cout << row.k << "," << row.opt << "," << to_string(row.fraction) << ","
                    << (row.proven ? "true" : "false") << "\n";
        }
      } else {
        Json table = Json::array();
        for (const auto& row : r.table) {
          Json j = Json::object();
          j["k"] = row.k;
          j["opt"] = row.opt;
          j["fraction"] = to_string(row.fraction);
          j["proven"] = row.proven;
          table.push_back(j);
        }
        Json out = Json::object();
        out["r_max"] = to_string(r.r_max);
        out["k_star"] = r.k_star ? Json(*r.k_star) : Json(nullptr);
        out["inconclusive"] = r.inconclusive;
        out["table"] = table;
        print_json(out);
      }
    } else if (*schedule) {
      if (demands_path.empty() && synth_households == 0) throw std::invalid_argument("give --demands or --synth");
      DemandSeries series =
          demands_path.empty() ? synth_demands(synth_households, synth_days, sim.seed) : load_demands(demands_path);
      sim.algorithm = parse_heuristic(schedule_algo);
      sim.mode = relative ? NoiseMode::Relative : NoiseMode::Absolute;
      WelfareReport report = simulate(series, sim);
      if (schedule_format.csv()) {
        std::cout << report_tables(report);
      } else {
        Json out = Json::object();
        out["algorithm"] = report.algorithm;
        out["k"] = report.k;
        out["sd"] = report.noise_sd;
        out["relative"] = relative;
        out["repeats"] = report.repeats;
        out["households"] = series.agents();
        out["hours"] = series.hours;
        out["exclusions"] = report.exclusions;
        out["connection_time"] = welfare_json(report.connection);
        out["electricity"] = welfare_json(report.electricity);
        out["comfort"] = welfare_json(report.comfort);
        Json runs = Json::array();
        for (const auto& c : report.connection_runs) {
          Json j = Json::object();
          j["sum"] = to_string(c.sum);
          j["egalitarian"] = to_string(c.minimum);
          j["max_difference"] = to_string(c.max_difference);
          runs.push_back(j);
        }
        out["connection_runs"] = runs;
        out["tables"] = report_tables(report);
        print_json(out);
      }
    } else if (*gen) {
      std::optional<GeneratedInstance> generated;
      std::optional<Instance> inst;
      if (gen_mode == "random") {
        generated = generate_instance(gen_s, gen_opt, gen_seed);
        inst = generated->instance;
      } else if (gen_mode == "johnson") {
        inst = johnson_ff_instance();
      } else if (gen_mode == "ratio1375") {
        inst = ratio1375_instance();
      } else if (gen_mode == "ffd-lower") {
        inst = ffd_lower_instance(parse_rational(gen_delta));
      } else {
        inst = nf_lower_instance(gen_y, parse_rational(gen_eps));
      }
      if (gen_format.csv()) {
        std::cout << "item,size\n";
        for (std::size_t i = 0; i < inst->count(); ++i) std::cout << i << "," << to_string(inst->sizes()[i]) << "\n";
      } else {
        Json out = instance_to_json(*inst);
        if (generated) {
          out["opt"] = generated->opt;
          out["certificate"] = generated->certificate;
        }
        print_json(out);
      }
    } else if (*bench) {
      suite.algorithms.clear();
      for (const auto& a : bench_algos) suite.algorithms.push_back(parse_heuristic(a));
      BenchReport report = run_bench(suite);
      if (bench_format.csv()) {
        std::cout << bench_to_csv(report);
      } else {
        print_json(bench_to_json(report));
      }
      if (strict && (report.violations() > 0 || report.invalid() > 0)) return kExitViolation;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return EXIT_SUCCESS;
}
