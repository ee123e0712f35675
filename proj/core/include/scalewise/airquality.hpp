#pragma once

// Air-pollution indices: the emission-weight index A, the tolerance-weighted
// Pindex, AQI sub-indices by breakpoint interpolation, the max-rule overall
// AQI with its category bands, BQI, the Likert mean, the Shannon index, the
// population-weighted country index I(A) and the air stress index ASI.

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scalewise {

/// e(i, t, k): mass of pollutant i emitted in period t by source (or at location) k.
struct EmissionRecord {
  std::string pollutant;
  std::string period;
  std::string source;
  double mass = 0.0;
  std::string unit;
};

/// Sum over pollutants of e(i, t, k) for the given period and source.
/// Throws UnitError when the matching records carry different unit tags and
/// DomainError for negative masses.
double index_a(std::span<const EmissionRecord> records, std::string_view period, std::string_view source);

/// Tolerance factors tau(i): the emission level at which adverse effects are
/// known or thought to occur. The severity factor is 1 / tau(i).
class ToleranceTable {
 public:
  explicit ToleranceTable(std::string name = "custom") : name_(std::move(name)) {}

  /// Throws ConfigError unless tau > 0.
  void set(std::string pollutant, double tau);
  /// Throws ConfigError if the pollutant has no entry.
  double tolerance(std::string_view pollutant) const;
  double severity(std::string_view pollutant) const { return 1.0 / tolerance(pollutant); }

  const std::string& name() const noexcept { return name_; }
  const std::map<std::string, double, std::less<>>& entries() const noexcept { return tau_; }

  /// 24-hour tolerance factors: CO 7800, NO2 330, HC 788, SO2 266, PM 150.
  static ToleranceTable epa_1971();

 private:
  std::string name_;
  std::map<std::string, double, std::less<>> tau_;
};

/// Pindex B(t, k) = sum_i e(i, t, k) / tau(i). A value of 1 per pollutant is
/// 100% of its tolerance. Throws ConfigError for a pollutant without a
/// tolerance entry, plus the errors of index_a.
double pindex(std::span<const EmissionRecord> records, const ToleranceTable& tolerances, std::string_view period,
              std::string_view source);

struct BreakpointSegment {
  double conc_lo = 0.0;
  double conc_hi = 0.0;
  double aqi_lo = 0.0;
  double aqi_hi = 0.0;

  bool operator==(const BreakpointSegment&) const = default;
};

struct PollutantBreakpoints {
  std::string pollutant;
  std::string unit;
  /// Declared averaging period ("8h", "24h", ...); metadata only.
  std::string averaging_period;
  std::vector<BreakpointSegment> segments;
};

/// Per-pollutant concentration -> AQI interpolation tables.
class BreakpointTable {
 public:
  explicit BreakpointTable(std::string name = "custom") : name_(std::move(name)) {}

  /// Throws ConfigError unless the segments are non-empty, each has
  /// conc_lo < conc_hi and aqi_lo <= aqi_hi within [0, 500], and adjacent
  /// segments are contiguous in concentration (conc_hi == next conc_lo) with
  /// non-decreasing AQI.
  void add(PollutantBreakpoints entry);

  /// Throws ConfigError for an unknown pollutant.
  const PollutantBreakpoints& at(std::string_view pollutant) const;
  bool contains(std::string_view pollutant) const { return entries_.find(pollutant) != entries_.end(); }
  const std::string& name() const noexcept { return name_; }
  const std::map<std::string, PollutantBreakpoints, std::less<>>& entries() const noexcept { return entries_; }

  /// Same table with every concentration multiplied by `factor` and tagged
  /// `unit`, for expressing breakpoints in another volume or mass unit.
  BreakpointTable rescaled(double factor, const std::string& unit) const;

  /// Moderate bands O3 0.055-0.070 ppm, CO 4.5-9.4 ppm, PM2.5 12.1-35.4 ug/m3
  /// (AQI 51-100), each preceded by a Good band from zero concentration to the
  /// moderate lower breakpoint (AQI 0-51).
  static BreakpointTable moderate_bands();

 private:
  std::string name_;
  std::map<std::string, PollutantBreakpoints, std::less<>> entries_;
};

/// aqi_lo + (c - conc_lo) / (conc_hi - conc_lo) * (aqi_hi - aqi_lo) in the
/// segment containing c; at a shared breakpoint the lower segment wins.
/// Throws UnitError when `unit` differs from the table's tag, RangeError
/// outside the table's coverage, ConfigError for an unknown pollutant.
double aqi_subindex(std::string_view pollutant, double concentration, std::string_view unit,
                    const BreakpointTable& table);

/// Tie-break order for the dominant pollutant: PM, CO, SO2, NO2, O3, then
/// anything else by name. Any name starting with "PM" ranks as PM.
int canonical_rank(std::string_view pollutant) noexcept;

struct PollutantScore {
  std::string pollutant;
  double score = 0.0;
};

class PollutantVector {
 public:
  /// Throws DomainError for negative or non-finite scores.
  explicit PollutantVector(std::vector<PollutantScore> scores);
  /// Scores in the conventional order PM, CO, SO2, NO2, O3.
  static PollutantVector standard(const std::array<double, 5>& scores);

  bool empty() const noexcept { return scores_.empty(); }
  std::size_t size() const noexcept { return scores_.size(); }
  const std::vector<PollutantScore>& scores() const noexcept { return scores_; }
  std::vector<double> values() const;

 private:
  std::vector<PollutantScore> scores_;
};

struct OverallAqi {
  double value = 0.0;
  std::string dominant;
};

/// Highest sub-index and its pollutant; ties go to the lowest canonical rank.
/// Throws DomainError on an empty vector.
OverallAqi overall_aqi(const PollutantVector& v);

/// Arithmetic mean of the sub-indices. Throws DomainError on an empty vector.
double bqi(const PollutantVector& v);

struct LikertMean {
  double value = 0.0;
  /// Always set: Likert ratings are ordinal, so comparing these means (or
  /// their ratios) across days or places is not meaningful.
  bool ordinal_caveat = true;
};

/// (1/n) sum L(i) over ratings in 1..5. Throws DomainError on an empty input
/// or a rating outside 1..5.
LikertMean likert_mean(std::span<const int> ratings);

struct CategoryBand {
  std::string_view name;
  std::string_view color;
  int aqi_lo;
  int aqi_hi;  // -1: open-ended
  std::string_view description;
};

std::span<const CategoryBand> category_bands() noexcept;

/// Band containing `aqi` after rounding half-up to an integer. Throws
/// DomainError for negative or non-finite input.
const CategoryBand& category(double aqi);

/// H(x) = -sum a_i ln a_i with a_i = x_i / sum x, and 0 ln 0 = 0.
/// Throws DomainError for negative entries or an all-zero vector.
double shannon_index(std::span<const double> values);
inline double shannon_index(const PollutantVector& v) { return shannon_index(v.values()); }

struct CityReading {
  std::string city;
  double mean_pm25 = 0.0;      // M(i), annual mean concentration
  std::uint64_t population = 1;  // P(i)
};

/// I(A) = sum M(i) P(i) / sum P(i). Throws DomainError for an empty list,
/// a population of zero or a negative concentration.
double population_weighted(std::span<const CityReading> readings);

/// ASI = (1/p) sum C_i / R_i. Throws DomainError for mismatched or empty
/// inputs and for a zero reference count.
double asi(std::span<const std::uint64_t> counts, std::span<const std::uint64_t> refs);

/// current / previous - 1, e.g. 0.2 for a 20% increase. Throws DomainError if
/// previous is zero.
double relative_change(double previous, double current);

/// Side-by-side reading of two sub-index vectors under the max rule and the
/// mean rule.
struct MaxMeanComparison {
  OverallAqi max_a;
  OverallAqi max_b;
  double mean_a = 0.0;
  double mean_b = 0.0;
  /// The two rules rank the vectors in opposite directions.
  bool rankings_disagree = false;
  /// The max rule calls the vectors equal while their means differ.
  bool max_conflates = false;

  bool divergent() const noexcept { return rankings_disagree || max_conflates; }
};

MaxMeanComparison compare_max_mean(const PollutantVector& a, const PollutantVector& b);

}  // namespace scalewise
