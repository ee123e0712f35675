#include "scalewise/airquality.hpp"

#include <algorithm>
#include <cmath>

#include "scalewise/error.hpp"
#include "scalewise/format.hpp"
#include "scalewise/stats.hpp"

namespace scalewise {

namespace {

bool matches(const EmissionRecord& r, std::string_view period, std::string_view source) {
  return r.period == period && r.source == source;
}

// Shared unit check for index_a and pindex.
void check_records(std::span<const EmissionRecord> records, std::string_view period, std::string_view source) {
  const EmissionRecord* first = nullptr;
  for (const auto& r : records) {
    if (!matches(r, period, source)) continue;
    if (!(r.mass >= 0.0) || !std::isfinite(r.mass)) {
      throw DomainError("emission mass must be non-negative (" + r.pollutant + ")");
    }
    if (first == nullptr) {
      first = &r;
    } else if (r.unit != first->unit) {
      throw UnitError("mixed mass units '" + first->unit + "' and '" + r.unit + "' in period " +
                      std::string(period) + ", source " + std::string(source));
    }
  }
}

constexpr std::array<CategoryBand, 6> kBands{{
    {"Good", "Green", 0, 50, "no health concern expected"},
    {"Moderate", "Yellow", 51, 100, "concern limited to unusually sensitive people"},
    {"Unhealthy for Sensitive Groups", "Orange", 101, 150, "sensitive groups affected"},
    {"Unhealthy", "Red", 151, 200, "general population affected"},
    {"Very Unhealthy", "Purple", 201, 300, "elevated risk across the population"},
    {"Hazardous", "Maroon", 301, -1, "emergency level across the population"},
}};

}  // namespace

double index_a(std::span<const EmissionRecord> records, std::string_view period, std::string_view source) {
  check_records(records, period, source);
  double total = 0.0;
  for (const auto& r : records) {
    if (matches(r, period, source)) total += r.mass;
  }
  return total;
}

void ToleranceTable::set(std::string pollutant, double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw ConfigError("tolerance for '" + pollutant + "' must be positive");
  }
  tau_.insert_or_assign(std::move(pollutant), tau);
}

double ToleranceTable::tolerance(std::string_view pollutant) const {
  auto it = tau_.find(pollutant);
  if (it == tau_.end()) {
    throw ConfigError("no tolerance factor for pollutant '" + std::string(pollutant) + "' in table '" + name_ + "'");
  }
  return it->second;
}

ToleranceTable ToleranceTable::epa_1971() {
  ToleranceTable t("epa-1971-24h");
  t.set("CO", 7800);
  t.set("NO2", 330);
  t.set("HC", 788);
  t.set("SO2", 266);
  t.set("PM", 150);
  return t;
}

double pindex(std::span<const EmissionRecord> records, const ToleranceTable& tolerances, std::string_view period,
              std::string_view source) {
  check_records(records, period, source);
  double total = 0.0;
  for (const auto& r : records) {
    if (matches(r, period, source)) total += r.mass / tolerances.tolerance(r.pollutant);
  }
  return total;
}

void BreakpointTable::add(PollutantBreakpoints entry) {
  const std::string where = "breakpoints for '" + entry.pollutant + "'";
  if (entry.pollutant.empty()) throw ConfigError("breakpoint entry without a pollutant name");
  if (entry.unit.empty()) throw ConfigError(where + " carry no unit tag");
  if (entry.segments.empty()) throw ConfigError(where + " have no segments");
  for (std::size_t i = 0; i < entry.segments.size(); ++i) {
    const auto& s = entry.segments[i];
    if (!(s.conc_lo >= 0.0 && s.conc_lo < s.conc_hi) || !std::isfinite(s.conc_hi)) {
      throw ConfigError(where + ": segment " + std::to_string(i) + " needs 0 <= conc_lo < conc_hi");
    }
    if (!(s.aqi_lo >= 0.0 && s.aqi_lo <= s.aqi_hi && s.aqi_hi <= 500.0)) {
      throw ConfigError(where + ": segment " + std::to_string(i) + " needs 0 <= aqi_lo <= aqi_hi <= 500");
    }
    if (i > 0) {
      const auto& prev = entry.segments[i - 1];
      if (prev.conc_hi != s.conc_lo) {
        throw ConfigError(where + ": segment " + std::to_string(i) + " is not contiguous with the previous one");
      }
      if (s.aqi_lo < prev.aqi_hi) {
        throw ConfigError(where + ": segment " + std::to_string(i) + " decreases the index");
      }
    }
  }
  std::string key = entry.pollutant;
  entries_.insert_or_assign(std::move(key), std::move(entry));
}

const PollutantBreakpoints& BreakpointTable::at(std::string_view pollutant) const {
  auto it = entries_.find(pollutant);
  if (it == entries_.end()) {
    throw ConfigError("unknown pollutant '" + std::string(pollutant) + "' for breakpoint table '" + name_ + "'");
  }
  return it->second;
}

BreakpointTable BreakpointTable::rescaled(double factor, const std::string& unit) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) throw DomainError("unit conversion factor must be positive");
  BreakpointTable out(name_ + "@" + unit);
  for (const auto& [_, entry] : entries_) {
    PollutantBreakpoints copy = entry;
    copy.unit = unit;
    for (auto& s : copy.segments) {
      s.conc_lo *= factor;
      s.conc_hi *= factor;
    }
    out.add(std::move(copy));
  }
  return out;
}

BreakpointTable BreakpointTable::moderate_bands() {
  BreakpointTable t("moderate-bands");
  t.add({"O3", "ppm", "8h", {{0.0, 0.055, 0.0, 51.0}, {0.055, 0.070, 51.0, 100.0}}});
  t.add({"CO", "ppm", "8h", {{0.0, 4.5, 0.0, 51.0}, {4.5, 9.4, 51.0, 100.0}}});
  t.add({"PM2.5", "ug/m3", "24h", {{0.0, 12.1, 0.0, 51.0}, {12.1, 35.4, 51.0, 100.0}}});
  return t;
}

double aqi_subindex(std::string_view pollutant, double concentration, std::string_view unit,
                    const BreakpointTable& table) {
  const auto& entry = table.at(pollutant);
  if (unit != entry.unit) {
    throw UnitError("concentration of " + std::string(pollutant) + " given in '" + std::string(unit) +
                    "' but table '" + table.name() + "' uses '" + entry.unit + "'");
  }
  if (!std::isfinite(concentration) || concentration < entry.segments.front().conc_lo ||
      concentration > entry.segments.back().conc_hi) {
    throw RangeError(std::string(pollutant) + " concentration " + format_number(concentration) + " " + entry.unit +
                     " is outside the table coverage [" + format_number(entry.segments.front().conc_lo) + ", " +
                     format_number(entry.segments.back().conc_hi) + "]");
  }
  const auto seg = std::find_if(entry.segments.begin(), entry.segments.end(),
                                [&](const BreakpointSegment& s) { return concentration <= s.conc_hi; });
  if (concentration == seg->conc_lo) return seg->aqi_lo;
  if (concentration == seg->conc_hi) return seg->aqi_hi;
  return seg->aqi_lo + (concentration - seg->conc_lo) / (seg->conc_hi - seg->conc_lo) * (seg->aqi_hi - seg->aqi_lo);
}

int canonical_rank(std::string_view pollutant) noexcept {
  if (pollutant.starts_with("PM")) return 0;
  if (pollutant == "CO") return 1;
  if (pollutant == "SO2") return 2;
  if (pollutant == "NO2") return 3;
  if (pollutant == "O3") return 4;
  return 5;
}

PollutantVector::PollutantVector(std::vector<PollutantScore> scores) : scores_(std::move(scores)) {
  for (const auto& s : scores_) {
    if (!(s.score >= 0.0) || !std::isfinite(s.score)) {
      throw DomainError("sub-index for " + s.pollutant + " must be non-negative");
    }
  }
}

PollutantVector PollutantVector::standard(const std::array<double, 5>& scores) {
  static constexpr std::array<std::string_view, 5> kNames{"PM", "CO", "SO2", "NO2", "O3"};
  std::vector<PollutantScore> v;
  for (std::size_t i = 0; i < 5; ++i) v.push_back({std::string(kNames[i]), scores[i]});
  return PollutantVector(std::move(v));
}

std::vector<double> PollutantVector::values() const {
  std::vector<double> out;
  out.reserve(scores_.size());
  for (const auto& s : scores_) out.push_back(s.score);
  return out;
}

OverallAqi overall_aqi(const PollutantVector& v) {
  if (v.empty()) throw DomainError("overall AQI of an empty pollutant vector");
  const PollutantScore* best = &v.scores().front();
  for (const auto& s : v.scores()) {
    const bool higher = s.score > best->score;
    const bool tie_wins = s.score == best->score &&
                          (canonical_rank(s.pollutant) < canonical_rank(best->pollutant) ||
                           (canonical_rank(s.pollutant) == canonical_rank(best->pollutant) && s.pollutant < best->pollutant));
    if (higher || tie_wins) best = &s;
  }
  return OverallAqi{best->score, best->pollutant};
}

double bqi(const PollutantVector& v) {
  if (v.empty()) throw DomainError("BQI of an empty pollutant vector");
  return arithmetic_mean(v.values());
}

LikertMean likert_mean(std::span<const int> ratings) {
  if (ratings.empty()) throw DomainError("Likert mean of no ratings");
  double total = 0.0;
  for (int r : ratings) {
    if (r < 1 || r > 5) throw DomainError("Likert rating " + std::to_string(r) + " outside 1..5");
    total += r;
  }
  return LikertMean{total / static_cast<double>(ratings.size()), true};
}

std::span<const CategoryBand> category_bands() noexcept { return kBands; }

const CategoryBand& category(double aqi) {
  if (!(aqi >= 0.0) || !std::isfinite(aqi)) throw DomainError("AQI must be non-negative");
  const double rounded = std::floor(aqi + 0.5);
  for (const auto& band : kBands) {
    if (band.aqi_hi < 0 || rounded <= band.aqi_hi) return band;
  }
  return kBands.back();
}

double shannon_index(std::span<const double> values) {
  double total = 0.0;
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("Shannon index needs non-negative entries");
    total += v;
  }
  if (!(total > 0.0)) throw DomainError("Shannon index of an all-zero vector");
  double h = 0.0;
  for (double v : values) {
    if (v == 0.0) continue;
    const double a = v / total;
    h -= a * std::log(a);
  }
  return h;
}

double population_weighted(std::span<const CityReading> readings) {
  if (readings.empty()) throw DomainError("population-weighted index of no cities");
  double weighted = 0.0;
  double population = 0.0;
  for (const auto& r : readings) {
    if (r.population == 0) throw DomainError("city '" + r.city + "' has zero population");
    if (!(r.mean_pm25 >= 0.0) || !std::isfinite(r.mean_pm25)) {
      throw DomainError("city '" + r.city + "' has a negative concentration");
    }
    weighted += r.mean_pm25 * static_cast<double>(r.population);
    population += static_cast<double>(r.population);
  }
  return weighted / population;
}

double asi(std::span<const std::uint64_t> counts, std::span<const std::uint64_t> refs) {
  if (counts.size() != refs.size()) throw DomainError("ASI needs one reference count per exceedance count");
  if (counts.empty()) throw DomainError("ASI of no pollutants");
  double total = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (refs[i] == 0) throw DomainError("ASI reference count must be at least 1");
    total += static_cast<double>(counts[i]) / static_cast<double>(refs[i]);
  }
  return total / static_cast<double>(counts.size());
}

double relative_change(double previous, double current) {
  if (previous == 0.0) throw DomainError("relative change from zero");
  return current / previous - 1.0;
}

MaxMeanComparison compare_max_mean(const PollutantVector& a, const PollutantVector& b) {
  MaxMeanComparison c;
  c.max_a = overall_aqi(a);
  c.max_b = overall_aqi(b);
  c.mean_a = bqi(a);
  c.mean_b = bqi(b);
  auto sign = [](double d) { return (d > 0.0) - (d < 0.0); };
  const int by_max = sign(c.max_a.value - c.max_b.value);
  const int by_mean = sign(c.mean_a - c.mean_b);
  c.rankings_disagree = by_max != 0 && by_mean != 0 && by_max != by_mean;
  c.max_conflates = by_max == 0 && by_mean != 0;
  return c;
}

}  // namespace scalewise
