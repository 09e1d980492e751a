#include "kbin/electricity.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "kbin/gen.hpp"
#include "kbin/parallel.hpp"

namespace kbin {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) return out;
    start = comma + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  std::string s(buf);
  if (s == "-0.0000") s = "0.0000";
  return s;
}

WelfareStats stats_of(const std::vector<double>& utility) {
  WelfareStats s;
  if (utility.empty()) return s;
  double lo = utility.front();
  double hi = utility.front();
  for (double u : utility) {
    s.sum += u;
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  s.average = s.sum / static_cast<double>(utility.size());
  s.minimum = lo;
  s.max_difference = hi - lo;
  return s;
}

MetricSummary summarize(const std::vector<double>& values) {
  MetricSummary m;
  for (double v : values) m.mean += v;
  m.mean /= static_cast<double>(values.size());
  m.sd = sample_sd(values);
  return m;
}

template <typename Get>
ModelSummary summarize_model(std::size_t runs, Get get) {
  std::vector<double> sum, avg, min, diff;
  for (std::size_t r = 0; r < runs; ++r) {
    WelfareStats s = get(r);
    sum.push_back(s.sum);
    avg.push_back(s.average);
    min.push_back(s.minimum);
    diff.push_back(s.max_difference);
  }
  return {summarize(sum), summarize(avg), summarize(min), summarize(diff)};
}

}  // namespace

DemandSeries parse_demands(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t row = 0;
  DemandSeries out;
  bool header = false;
  while (std::getline(in, line)) {
    ++row;
    std::string_view view = trim(line);
    if (view.empty()) continue;
    auto fields = split_fields(view);
    if (!header) {
      if (trim(fields[0]) != "hour") throw ParseError("header must start with 'hour'", row, 1);
      if (fields.size() < 2) throw ParseError("header lists no households", row, 1);
      for (std::size_t c = 1; c < fields.size(); ++c) out.ids.emplace_back(trim(fields[c]));
      header = true;
      continue;
    }
    if (fields.size() != out.ids.size() + 1) throw ParseError("wrong number of fields", row, fields.size());
    std::string_view hour = trim(fields[0]);
    long long h = 0;
    auto [hp, hec] = std::from_chars(hour.data(), hour.data() + hour.size(), h);
    if (hec != std::errc() || hp != hour.data() + hour.size()) throw ParseError("bad hour index", row, 1);
    for (std::size_t c = 1; c < fields.size(); ++c) {
      std::string_view f = trim(fields[c]);
      double v = 0;
      auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || p != f.data() + f.size() || !std::isfinite(v)) {
        throw ParseError("bad demand value", row, c + 1);
      }
      if (v < 0) throw ParseError("negative demand", row, c + 1);
      out.values.push_back(v);
    }
    ++out.hours;
  }
  if (!header) throw ParseError("missing header", row, 1);
  if (out.hours == 0) throw ParseError("series has no hours", row, 1);
  return out;
}

DemandSeries load_demands(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_demands(buf.str());
}

std::string format_demands(const DemandSeries& series) {
  std::string out = "hour";
  for (const auto& id : series.ids) out += "," + id;
  out += "\n";
  for (std::size_t h = 0; h < series.hours; ++h) {
    out += std::to_string(h);
    for (double v : series.row(h)) out += "," + shortest(v);
    out += "\n";
  }
  return out;
}

void save_demands(const DemandSeries& series, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << format_demands(series);
}

DemandSeries synth_demands(std::size_t households, std::size_t days, std::uint64_t seed) {
  if (households == 0 || days == 0) throw std::invalid_argument("need at least one household and one day");
  DemandSeries out;
  out.hours = days * kHoursPerDay;
  for (std::size_t i = 0; i < households; ++i) out.ids.push_back("h" + std::to_string(i + 1));
  out.values.resize(out.hours * households);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> base(0.05, 0.3), morning(0.1, 0.5), evening(0.3, 1.2);
  std::normal_distribution<double> shift(0.0, 1.0), noise(0.0, 0.15);
  struct Profile {
    double base, morning, evening, shift;
  };
  std::vector<Profile> profiles;
  for (std::size_t i = 0; i < households; ++i) profiles.push_back({base(rng), morning(rng), evening(rng), shift(rng)});
  for (std::size_t h = 0; h < out.hours; ++h) {
    double hod = static_cast<double>(h % kHoursPerDay);
    bool weekend = (h / kHoursPerDay) % 7 >= 5;
    for (std::size_t i = 0; i < households; ++i) {
      const Profile& p = profiles[i];
      double m = hod - 7.5 - p.shift;
      double e = hod - 19.0 - p.shift;
      double v = p.base + p.morning * std::exp(-m * m / 2.0) + p.evening * std::exp(-e * e / 4.0);
      if (weekend) v *= 1.1;
      out.at(h, i) = std::max(kDemandFloor, v * std::exp(noise(rng)));
    }
  }
  return out;
}

DemandSeries perturb(const DemandSeries& series, double sd, std::uint64_t seed, NoiseMode mode) {
  if (sd < 0) throw std::invalid_argument("sd must be non-negative");
  if (sd == 0) return series;
  DemandSeries out = series;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  for (double& v : out.values) {
    double scale = mode == NoiseMode::Absolute ? sd : sd * v;
    v = std::max(kDemandFloor, v + scale * unit(rng));
  }
  return out;
}

std::vector<double> daily_supply(const DemandSeries& series) {
  if (series.hours % kHoursPerDay != 0) throw std::invalid_argument("series does not cover whole days");
  std::vector<double> out;
  for (std::size_t d = 0; d < series.hours / kHoursPerDay; ++d) {
    double total = 0;
    for (std::size_t h = d * kHoursPerDay; h < (d + 1) * kHoursPerDay; ++h) {
      for (double v : series.row(h)) total += v;
    }
    out.push_back(total / static_cast<double>(kHoursPerDay));
  }
  return out;
}

std::int64_t to_units(double kw) { return std::llround(kw * 1e6); }

Rational HourOutcome::connection() const {
  if (q == 0) return Rational(0);
  return Rational(BigInt(k), BigInt(q));
}

HourSchedule schedule_hour(std::span<const double> demands, double supply, int k, Heuristic algo) {
  require_k(k);
  HourSchedule out;
  out.outcome.k = k;
  const std::int64_t capacity = to_units(supply);
  IntegerInstance inst;
  inst.capacity = capacity;
  std::vector<std::int32_t> agent_of;
  for (std::size_t i = 0; i < demands.size(); ++i) {
    // A zero reading still occupies the smallest packable quantum.
    std::int64_t units = std::max<std::int64_t>(1, to_units(demands[i]));
    if (units > capacity) {
      out.outcome.excluded.push_back(static_cast<std::int32_t>(i));
      continue;
    }
    inst.sizes.push_back(units);
    agent_of.push_back(static_cast<std::int32_t>(i));
  }
  if (inst.sizes.empty()) return out;
  KPacking packing = run_heuristic(algo, inst, k);
  out.outcome.q = static_cast<std::int64_t>(packing.bin_count());
  out.bins.reserve(packing.bins.size());
  for (const auto& bin : packing.bins) {
    std::vector<std::int32_t> agents;
    agents.reserve(bin.contents.size());
    for (const auto& c : bin.contents) agents.push_back(agent_of[static_cast<std::size_t>(c.item)]);
    out.bins.push_back(std::move(agents));
  }
  return out;
}

std::vector<double> comfort_matrix(const DemandSeries& series) {
  const std::size_t n = series.agents();
  std::vector<double> raw(series.hours * n);
  for (std::size_t h = 0; h < series.hours; ++h) {
    for (std::size_t a = 0; a < n; ++a) {
      double sum = 0;
      int weeks = 0;
      for (std::size_t w = 1; w <= 4 && w * kHoursPerWeek <= h; ++w) {
        sum += series.at(h - w * kHoursPerWeek, a);
        ++weeks;
      }
      raw[h * n + a] = weeks > 0 ? sum / weeks : series.at(h, a);
    }
  }
  std::vector<double> peak(n, 0.0);
  for (std::size_t h = 0; h < series.hours; ++h) {
    for (std::size_t a = 0; a < n; ++a) peak[a] = std::max(peak[a], raw[h * n + a]);
  }
  for (std::size_t h = 0; h < series.hours; ++h) {
    for (std::size_t a = 0; a < n; ++a) {
      double& v = raw[h * n + a];
      v = peak[a] > 0 ? v / peak[a] : 0.0;
    }
  }
  return raw;
}

double comfort(const DemandSeries& series, std::size_t hour, std::size_t agent) {
  if (hour >= series.hours || agent >= series.agents()) throw std::out_of_range("comfort index out of range");
  DemandSeries one;
  one.ids = {series.ids[agent]};
  one.hours = series.hours;
  for (std::size_t h = 0; h < series.hours; ++h) one.values.push_back(series.at(h, agent));
  return comfort_matrix(one)[hour];
}

RunWelfare evaluate(std::span<const HourOutcome> outcomes, const DemandSeries& demands,
                    std::span<const double> comfort_weights) {
  const std::size_t n = demands.agents();
  if (outcomes.size() != demands.hours) throw std::invalid_argument("one outcome per hour is required");
  if (comfort_weights.size() != demands.hours * n) throw std::invalid_argument("comfort matrix size mismatch");
  Rational all_hours = 0;
  std::vector<Rational> missed(n, Rational(0));
  std::vector<double> elec(n, 0.0), comf(n, 0.0);
  for (std::size_t h = 0; h < outcomes.size(); ++h) {
    const HourOutcome& o = outcomes[h];
    Rational c = o.connection();
    all_hours += c;
    for (auto a : o.excluded) missed[static_cast<std::size_t>(a)] += c;
    if (o.q == 0) continue;
    double f = static_cast<double>(o.k) / static_cast<double>(o.q);
    std::size_t ex = 0;
    for (std::size_t a = 0; a < n; ++a) {
      if (ex < o.excluded.size() && static_cast<std::size_t>(o.excluded[ex]) == a) {
        ++ex;
        continue;
      }
      elec[a] += f * demands.at(h, a);
      comf[a] += f * comfort_weights[h * n + a];
    }
  }
  RunWelfare out;
  Rational lo, hi;
  out.connection.sum = 0;
  for (std::size_t a = 0; a < n; ++a) {
    Rational u = all_hours - missed[a];
    out.connection.sum += u;
    if (a == 0 || u < lo) lo = u;
    if (a == 0 || u > hi) hi = u;
  }
  out.connection.average = out.connection.sum / Rational(static_cast<std::int64_t>(n));
  out.connection.minimum = lo;
  out.connection.max_difference = hi - lo;
  out.electricity = stats_of(elec);
  out.comfort = stats_of(comf);
  return out;
}

double sample_sd(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  double mean = 0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

WelfareReport simulate(const DemandSeries& series, const SimConfig& config) {
  require_k(config.k);
  if (config.repeats < 1) throw std::invalid_argument("repeats must be at least 1");
  if (config.sd < 0) throw std::invalid_argument("sd must be non-negative");
  std::vector<double> supply = daily_supply(series);
  std::vector<double> weights = comfort_matrix(series);
  std::vector<RunWelfare> runs;
  WelfareReport report;
  for (std::size_t r = 0; r < config.repeats; ++r) {
    DemandSeries actual = perturb(series, config.sd, derive_seed(config.seed, r), config.mode);
    std::vector<HourOutcome> outcomes(series.hours);
    parallel_for(series.hours, [&](std::size_t h) {
      outcomes[h] = schedule_hour(actual.row(h), supply[h / kHoursPerDay], config.k, config.algorithm).outcome;
    });
    for (const auto& o : outcomes) report.exclusions += static_cast<std::int64_t>(o.excluded.size());
    runs.push_back(evaluate(outcomes, actual, weights));
  }
  report.algorithm = std::string(to_string(config.algorithm));
  report.k = config.k;
  report.noise_sd = config.sd;
  report.repeats = config.repeats;
  report.connection = summarize_model(runs.size(), [&](std::size_t r) {
    const ExactWelfare& e = runs[r].connection;
    return WelfareStats{to_double(e.sum), to_double(e.average), to_double(e.minimum), to_double(e.max_difference)};
  });
  report.electricity = summarize_model(runs.size(), [&](std::size_t r) { return runs[r].electricity; });
  report.comfort = summarize_model(runs.size(), [&](std::size_t r) { return runs[r].comfort; });
  for (const auto& run : runs) report.connection_runs.push_back(run.connection);
  return report;
}

std::string report_tables(const WelfareReport& report) {
  std::string out;
  auto table = [&](const char* title, const ModelSummary& m) {
    out += "# ";
    out += title;
    out += "\n";
    out += "algorithm,utilitarian sum (SD),utilitarian avg,egalitarian (SD),max utility difference (SD)\n";
    out += report.algorithm + "," + fixed4(m.sum.mean) + " (" + fixed4(m.sum.sd) + ")," + fixed4(m.average.mean) +
           "," + fixed4(m.minimum.mean) + " (" + fixed4(m.minimum.sd) + ")," + fixed4(m.max_difference.mean) + " (" +
           fixed4(m.max_difference.sd) + ")\n";
  };
  table("connection time", report.connection);
  out += "\n";
  table("electricity", report.electricity);
  out += "\n";
  table("comfort", report.comfort);
  return out;
}

}  // namespace kbin
