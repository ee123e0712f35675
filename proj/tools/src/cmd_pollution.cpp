#include <chrono>
#include <map>

#include "common.hpp"
#include "scalewise/airquality.hpp"
#include "scalewise/cli/commands.hpp"
#include "scalewise/cli/documents.hpp"
#include "scalewise/exceedance.hpp"

namespace scalewise::cli {

using namespace detail;

namespace {

ToleranceTable tolerances_for(const RunConfig& config) {
  if (config.tolerances_path.empty()) return ToleranceTable::epa_1971();
  const auto in = read_input(config.tolerances_path);
  return load_tolerances(parse_json(in.text, in.name));
}

// Keys in order of first appearance.
template <class Key>
class FirstSeen {
 public:
  std::size_t slot(const Key& k) {
    auto [it, inserted] = index_.emplace(k, keys_.size());
    if (inserted) keys_.push_back(k);
    return it->second;
  }
  const std::vector<Key>& keys() const noexcept { return keys_; }

 private:
  std::map<Key, std::size_t> index_;
  std::vector<Key> keys_;
};

bool parse_flag(const std::string& text) {
  if (text == "1" || text == "true" || text == "yes") return true;
  if (text == "0" || text == "false" || text == "no") return false;
  throw DomainError("exceeded flag '" + text + "' is not 1/0, true/false or yes/no");
}

}  // namespace

Report run_emissions(const Input& input, const RunConfig& config) {
  try {
    const auto tau = tolerances_for(config);
    const auto t = parse_csv(input.text);
    ReportBuilder rb("pollution emissions", input, base_config(config));
    rb.table("tolerances", to_json(tau));
    if (t.rows.empty()) return rb.finish(true);
    const auto cols = columns(t, {"pollutant", "period", "source", "mass", "unit"});
    if (!cols.missing.empty()) return fatal_report("pollution emissions", "missing CSV columns: " + joined(cols.missing));

    std::vector<EmissionRecord> records;
    FirstSeen<std::pair<std::string, std::string>> groups;
    for (const auto& r : t.rows) {
      try {
        EmissionRecord e{cell(r, cols.at[0]), cell(r, cols.at[1]), cell(r, cols.at[2]), numeric(r, cols.at[3], "mass"),
                         cell(r, cols.at[4])};
        if (e.mass < 0) throw DomainError("mass must be non-negative");
        groups.slot({e.period, e.source});
        records.push_back(std::move(e));
      } catch (const Error& e) {
        rb.error(r.line, e.what());
      }
    }
    for (const auto& [period, source] : groups.keys()) {
      const std::string where = period + "/" + source;
      try {
        const double a = index_a(records, period, source);
        const double b = pindex(records, tau, period, source);
        json shares = json::object();
        for (const auto& e : records) {
          if (e.period == period && e.source == source) {
            shares[e.pollutant] = shares.value(e.pollutant, 0.0) + e.mass / tau.tolerance(e.pollutant);
          }
        }
        rb.row({{"period", period}, {"source", source}, {"index_a", a}, {"pindex", b}, {"tolerance_fractions", shares}},
               where + "  A " + fmt(a) + "  Pindex " + fmt(b));
      } catch (const Error& e) {
        rb.error(where, e.what());
      }
    }
    return rb.finish(false);
  } catch (const Error& e) {
    return fatal_report("pollution emissions", e.what());
  }
}

Report run_cities(const Input& input, const RunConfig& config) {
  try {
    const auto t = parse_csv(input.text);
    ReportBuilder rb("pollution cities", input, base_config(config));
    if (t.rows.empty()) return rb.finish(true);
    const auto cols = columns(t, {"country", "city", "pm25", "population"});
    if (!cols.missing.empty()) return fatal_report("pollution cities", "missing CSV columns: " + joined(cols.missing));

    FirstSeen<std::string> countries;
    std::vector<std::vector<CityReading>> readings;
    for (const auto& r : t.rows) {
      try {
        const auto country = cell(r, cols.at[0]);
        CityReading c{cell(r, cols.at[1]), numeric(r, cols.at[2], "pm25"), count(r, cols.at[3], "population")};
        if (c.population == 0) throw DomainError("population must be at least 1");
        if (c.mean_pm25 < 0) throw DomainError("concentration must be non-negative");
        const auto slot = countries.slot(country);
        if (slot == readings.size()) readings.emplace_back();
        readings[slot].push_back(std::move(c));
      } catch (const Error& e) {
        rb.error(r.line, e.what());
      }
    }
    for (std::size_t i = 0; i < countries.keys().size(); ++i) {
      const auto& name = countries.keys()[i];
      const double ia = population_weighted(readings[i]);
      std::uint64_t pop = 0;
      for (const auto& c : readings[i]) pop += c.population;
      rb.row({{"country", name}, {"index", ia}, {"cities", readings[i].size()}, {"population", pop}},
             name + "  I(A) " + fmt(ia) + "  cities " + std::to_string(readings[i].size()));
    }
    return rb.finish(false);
  } catch (const Error& e) {
    return fatal_report("pollution cities", e.what());
  }
}

Report run_asi(const Input& input, const RunConfig& config) {
  try {
    const auto t = parse_csv(input.text);
    ReportBuilder rb("pollution asi", input, base_config(config));
    if (t.rows.empty()) return rb.finish(true);
    const auto cols = columns(t, {"period", "pollutant", "count", "reference"});
    if (!cols.missing.empty()) return fatal_report("pollution asi", "missing CSV columns: " + joined(cols.missing));

    FirstSeen<std::string> periods;
    std::vector<std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>> data;
    for (const auto& r : t.rows) {
      try {
        const auto period = cell(r, cols.at[0]);
        const auto c = count(r, cols.at[2], "count");
        const auto ref = count(r, cols.at[3], "reference");
        if (ref == 0) throw DomainError("reference count must be at least 1");
        const auto slot = periods.slot(period);
        if (slot == data.size()) data.emplace_back();
        data[slot].first.push_back(c);
        data[slot].second.push_back(ref);
      } catch (const Error& e) {
        rb.error(r.line, e.what());
      }
    }
    std::optional<double> previous;
    for (std::size_t i = 0; i < data.size(); ++i) {
      const auto& period = periods.keys()[i];
      const double v = asi(data[i].first, data[i].second);
      json row = {{"period", period}, {"asi", v}, {"pollutants", data[i].first.size()}};
      std::string text = period + "  ASI " + fmt(v);
      if (previous && *previous > 0) {
        const double change = relative_change(*previous, v);
        row["relative_change"] = change;
        text += "  change " + fmt(100 * change) + "%";
      } else {
        row["relative_change"] = nullptr;
      }
      rb.row(std::move(row), std::move(text));
      previous = v;
    }
    return rb.finish(false);
  } catch (const Error& e) {
    return fatal_report("pollution asi", e.what());
  }
}

Report run_exceedance(const Input& input, const RunConfig& config) {
  namespace chr = std::chrono;
  try {
    const auto t = parse_csv(input.text);
    json cfg = base_config(config);
    cfg["year_start"] = to_string(config.year_start);
    cfg["threshold_count"] = config.threshold_count;
    ReportBuilder rb("pollution exceedance", input, cfg);
    rb.line("year start " + to_string(config.year_start) + "  threshold " + std::to_string(config.threshold_count) +
            " exceedance days");
    rb.summary("year_start", to_string(config.year_start));
    if (t.rows.empty()) return rb.finish(true);
    const auto cols = columns(t, {"date", "exceeded"});
    if (!cols.missing.empty()) return fatal_report("pollution exceedance", "missing CSV columns: " + joined(cols.missing));

    std::optional<Date> first;
    std::optional<Date> prev;
    std::vector<bool> flags;
    bool broken = false;
    for (const auto& r : t.rows) {
      try {
        const Date d = parse_date(cell(r, cols.at[0]));
        const bool flag = parse_flag(cell(r, cols.at[1]));
        if (prev && chr::sys_days{d} != chr::sys_days{*prev} + chr::days{1}) {
          throw DomainError("date " + format_date(d) + " does not follow " + format_date(*prev));
        }
        if (!first) first = d;
        prev = d;
        flags.push_back(flag);
      } catch (const Error& e) {
        rb.error(r.line, e.what());
        broken = true;
        break;
      }
    }
    if (broken || flags.empty()) return rb.finish(false);

    const ExceedanceSeries series(*first, std::move(flags));
    const auto years = exceedance_years(series, config.threshold_count, config.year_start);
    if (years.empty()) {
      rb.error("series", "no complete year starting " + to_string(config.year_start) + " between " +
                             format_date(series.first()) + " and " + format_date(series.last()));
      return rb.finish(false);
    }
    for (const auto& y : years) {
      json row = {{"year_begin", format_date(y.year_begin)},
                  {"year_length", y.year_length},
                  {"total_days", y.total_days},
                  {"first_date_reaching", y.first_date_reaching ? json(format_date(*y.first_date_reaching)) : json(nullptr)},
                  {"threshold_day", y.threshold_day ? json(*y.threshold_day) : json(nullptr)},
                  {"days_remaining_in_year", y.days_remaining_in_year}};
      rb.row(std::move(row), "year from " + format_date(y.year_begin) + "  exceedances " + std::to_string(y.total_days) +
                                 "  reached on " +
                                 (y.first_date_reaching ? format_date(*y.first_date_reaching) + " (day " +
                                                              std::to_string(*y.threshold_day) + ")"
                                                        : std::string("never")) +
                                 "  remaining " + std::to_string(y.days_remaining_in_year));
    }
    json shifts = json::array();
    for (std::size_t i = 1; i < years.size(); ++i) {
      if (!years[i - 1].threshold_day || !years[i].threshold_day) continue;
      const auto s = threshold_shift(years[i - 1], years[i]);
      shifts.push_back({{"from", format_date(years[i - 1].year_begin)},
                        {"to", format_date(years[i].year_begin)},
                        {"earlier_day", s.earlier_day},
                        {"later_day", s.later_day},
                        {"days_later", s.days_later},
                        {"relative", s.relative}});
      rb.line("threshold day " + std::to_string(s.earlier_day) + " -> " + std::to_string(s.later_day) + " (years from " +
              format_date(years[i - 1].year_begin) + " and " + format_date(years[i].year_begin) + "): reached " +
              std::to_string(s.days_later) + " days later, " + fmt(100 * s.relative) + "% of " +
              std::to_string(s.later_day));
    }
    rb.summary("shifts", std::move(shifts));
    return rb.finish(false);
  } catch (const Error& e) {
    return fatal_report("pollution exceedance", e.what());
  }
}

}  // namespace scalewise::cli
