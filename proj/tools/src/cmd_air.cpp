#include <map>
#include <numeric>

#include "common.hpp"
#include "scalewise/airquality.hpp"
#include "scalewise/cli/commands.hpp"
#include "scalewise/cli/documents.hpp"

namespace scalewise::cli {

using namespace detail;

namespace {

struct Site {
  std::string location;
  std::string date;
  std::vector<PollutantScore> scores;
  json details = json::array();
  bool incomplete = false;
};

BreakpointTable breakpoints_for(const RunConfig& config) {
  if (config.breakpoints_path.empty()) return BreakpointTable::moderate_bands();
  const auto in = read_input(config.breakpoints_path);
  return load_breakpoints(parse_json(in.text, in.name));
}

}  // namespace

Report run_aqi(const Input& input, const RunConfig& config) {
  try {
    const auto table = breakpoints_for(config);
    const auto t = parse_csv(input.text);
    ReportBuilder rb("aqi", input, base_config(config));
    const bool precomputed = t.column("subindex").has_value();
    if (!precomputed) rb.table("breakpoints", to_json(table));
    if (t.rows.empty()) return rb.finish(true);

    const auto cols = precomputed ? columns(t, {"location", "date", "pollutant", "subindex"})
                                  : columns(t, {"location", "date", "pollutant", "concentration", "unit"});
    if (!cols.missing.empty()) return fatal_report("aqi", "missing CSV columns: " + joined(cols.missing));

    std::vector<Site> sites;
    std::map<std::pair<std::string, std::string>, std::size_t> where;
    for (const auto& r : t.rows) {
      Site* site = nullptr;
      try {
        auto key = std::pair{cell(r, cols.at[0]), cell(r, cols.at[1])};
        auto [it, inserted] = where.emplace(key, sites.size());
        if (inserted) sites.push_back(Site{key.first, key.second, {}, json::array(), false});
        site = &sites[it->second];
        const auto pollutant = cell(r, cols.at[2]);
        if (precomputed) {
          const double s = numeric(r, cols.at[3], "subindex");
          if (s < 0) throw DomainError("sub-index must be non-negative");
          site->scores.push_back({pollutant, s});
          site->details.push_back({{"pollutant", pollutant}, {"subindex", s}});
        } else {
          const double c = numeric(r, cols.at[3], "concentration");
          const auto unit = cell(r, cols.at[4]);
          const double s = aqi_subindex(pollutant, c, unit, table);
          site->scores.push_back({pollutant, s});
          site->details.push_back({{"pollutant", pollutant}, {"concentration", c}, {"unit", unit}, {"subindex", s}});
        }
      } catch (const Error& e) {
        if (site) site->incomplete = true;
        rb.error(r.line, e.what());
      }
    }

    std::vector<std::pair<std::string, PollutantVector>> vectors;
    for (auto& s : sites) {
      if (s.scores.empty()) continue;
      const std::string label = s.location + "@" + s.date;
      PollutantVector v(s.scores);
      const auto overall = overall_aqi(v);
      const auto& band = category(overall.value);
      const double mean = bqi(v);
      const double total = std::accumulate(s.scores.begin(), s.scores.end(), 0.0,
                                           [](double acc, const PollutantScore& p) { return acc + p.score; });
      json shannon = total > 0 ? json(shannon_index(v)) : json(nullptr);
      rb.row({{"location", s.location},
              {"date", s.date},
              {"subindices", s.details},
              {"overall", {{"value", overall.value}, {"dominant", overall.dominant}}},
              {"category", {{"name", band.name}, {"color", band.color}}},
              {"bqi", mean},
              {"shannon", shannon},
              {"incomplete", s.incomplete}},
             s.location + " " + s.date + "  AQI " + fmt(overall.value) + " (" + overall.dominant + ") " +
                 std::string(band.name) + "/" + std::string(band.color) + "  BQI " + fmt(mean) + "  H " +
                 (total > 0 ? fmt(shannon.get<double>()) : std::string("n/a")) + (s.incomplete ? "  [incomplete]" : ""));
      vectors.emplace_back(label, std::move(v));
    }

    json divergences = json::array();
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      for (std::size_t j = i + 1; j < vectors.size(); ++j) {
        const auto c = compare_max_mean(vectors[i].second, vectors[j].second);
        if (!c.divergent()) continue;
        const std::string kind = c.rankings_disagree ? "rankings_disagree" : "max_conflates";
        divergences.push_back({{"a", vectors[i].first},
                               {"b", vectors[j].first},
                               {"kind", kind},
                               {"max_a", c.max_a.value},
                               {"max_b", c.max_b.value},
                               {"mean_a", c.mean_a},
                               {"mean_b", c.mean_b}});
        rb.line("max/mean divergence (" + kind + "): " + vectors[i].first + " max " + fmt(c.max_a.value) + " mean " +
                fmt(c.mean_a) + " vs " + vectors[j].first + " max " + fmt(c.max_b.value) + " mean " + fmt(c.mean_b));
      }
    }
    rb.summary("sites", vectors.size());
    rb.summary("max_mean_divergences", std::move(divergences));
    return rb.finish(false);
  } catch (const Error& e) {
    return fatal_report("aqi", e.what());
  }
}

}  // namespace scalewise::cli
