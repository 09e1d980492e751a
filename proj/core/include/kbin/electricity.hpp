#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kbin/heuristics.hpp"
#include "kbin/rational.hpp"

namespace kbin {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t row, std::size_t column)
      : std::runtime_error(what + " (row " + std::to_string(row) + ", column " + std::to_string(column) + ")"),
        row_(row),
        column_(column) {}
  std::size_t row() const { return row_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

inline constexpr std::size_t kHoursPerDay = 24;
inline constexpr std::size_t kHoursPerWeek = 168;

/// Hourly demand in kW, one row per hour and one column per household.
struct DemandSeries {
  std::vector<std::string> ids;
  std::size_t hours = 0;
  std::vector<double> values;  // row-major, hours x ids.size()

  std::size_t agents() const { return ids.size(); }
  double at(std::size_t hour, std::size_t agent) const { return values[hour * ids.size() + agent]; }
  double& at(std::size_t hour, std::size_t agent) { return values[hour * ids.size() + agent]; }
  std::span<const double> row(std::size_t hour) const {
    return {values.data() + hour * ids.size(), ids.size()};
  }
};

/// CSV with header `hour,<id_1>,...,<id_N>` and one row per hour.
DemandSeries load_demands(const std::filesystem::path& path);
DemandSeries parse_demands(const std::string& text);
/// Shortest round-trip formatting, so parse_demands(write) is exact.
std::string format_demands(const DemandSeries& series);
void save_demands(const DemandSeries& series, const std::filesystem::path& path);

/// Seeded diurnal curves: a household base load plus morning and evening
/// bumps and multiplicative noise. All entries are positive.
DemandSeries synth_demands(std::size_t households, std::size_t days, std::uint64_t seed);

enum class NoiseMode { Absolute, Relative };

inline constexpr double kDemandFloor = 1e-6;

/// Each entry drawn from Normal(entry, sd) (or Normal(entry, sd * entry) in
/// relative mode), clamped at kDemandFloor. sd = 0 returns the input.
DemandSeries perturb(const DemandSeries& series, double sd, std::uint64_t seed,
                     NoiseMode mode = NoiseMode::Absolute);

/// Mean of the 24 hourly totals of each day.
std::vector<double> daily_supply(const DemandSeries& series);

/// Demands are packed in integer units of 1e-6 kW.
std::int64_t to_units(double kw);

struct HourOutcome {
  int k = 1;
  /// Bins used; zero when every agent was excluded.
  std::int64_t q = 0;
  /// Agents whose demand exceeded the supply in this hour.
  std::vector<std::int32_t> excluded;

  /// k / q, the connected fraction of the hour for every scheduled agent.
  Rational connection() const;
};

struct HourSchedule {
  HourOutcome outcome;
  /// Agent indices served in each slice of length 1/q.
  std::vector<std::vector<std::int32_t>> bins;
};

HourSchedule schedule_hour(std::span<const double> demands, double supply, int k, Heuristic algo);

/// Mean of the agent's same-hour-of-week demand over up to four prior weeks
/// (the current demand when no prior week exists), divided by the largest
/// such mean of the agent across the series.
double comfort(const DemandSeries& series, std::size_t hour, std::size_t agent);

/// comfort() for every (hour, agent), row-major.
std::vector<double> comfort_matrix(const DemandSeries& series);

/// Welfare of one utility model in one run.
struct WelfareStats {
  double sum = 0;
  double average = 0;
  double minimum = 0;
  double max_difference = 0;
};

/// Connection-time welfare is kept exact.
struct ExactWelfare {
  Rational sum;
  Rational average;
  Rational minimum;
  Rational max_difference;
};

struct RunWelfare {
  ExactWelfare connection;
  WelfareStats electricity;
  WelfareStats comfort;
};

/// Per-agent utilities summed over hours: connection time k/q, electricity
/// (k/q) demand, comfort (k/q) comfort weight. Excluded agents gain nothing
/// in that hour.
RunWelfare evaluate(std::span<const HourOutcome> outcomes, const DemandSeries& demands,
                    std::span<const double> comfort_weights);

struct MetricSummary {
  double mean = 0;
  double sd = 0;
};

struct ModelSummary {
  MetricSummary sum;
  MetricSummary average;
  MetricSummary minimum;
  MetricSummary max_difference;
};

struct WelfareReport {
  std::string algorithm;
  int k = 1;
  double noise_sd = 0;
  std::size_t repeats = 0;
  ModelSummary connection;
  ModelSummary electricity;
  ModelSummary comfort;
  /// Exact connection welfare of every repeat.
  std::vector<ExactWelfare> connection_runs;
  /// (agent, hour) exclusions summed over repeats.
  std::int64_t exclusions = 0;
};

struct SimConfig {
  int k = 100;
  Heuristic algorithm = Heuristic::FFk;
  double sd = 0.05;
  NoiseMode mode = NoiseMode::Absolute;
  std::size_t repeats = 9;
  std::uint64_t seed = 1;
};

/// Each repeat perturbs the series with its own seed stream, schedules
/// every hour against the daily supply of the unperturbed series and
/// evaluates welfare. Hours run on the worker pool.
WelfareReport simulate(const DemandSeries& series, const SimConfig& config);

/// Three CSV tables (connection time, electricity, comfort) with columns
/// algorithm, utilitarian sum (SD), utilitarian avg, egalitarian (SD),
/// max utility difference (SD); numbers use four decimals.
std::string report_tables(const WelfareReport& report);

/// Sample standard deviation (n - 1); zero for fewer than two values.
double sample_sd(std::span<const double> values);

}  // namespace kbin
