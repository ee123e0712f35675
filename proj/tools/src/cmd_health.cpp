#include "common.hpp"
#include "scalewise/cli/commands.hpp"
#include "scalewise/health.hpp"
#include "scalewise/stats.hpp"

namespace scalewise::cli {

using namespace detail;

Report run_bmi(const Input& input, const RunConfig& config) {
  try {
    const auto t = parse_csv(input.text);
    ReportBuilder rb("bmi", input, base_config(config));
    if (t.rows.empty()) return rb.finish(true);
    const auto cols = columns(t, {"id", "weight", "weight_unit", "height", "height_unit"});
    if (!cols.missing.empty()) return fatal_report("bmi", "missing CSV columns: " + joined(cols.missing));

    std::vector<double> bmis;
    std::vector<double> ponderals;
    for (const auto& r : t.rows) {
      try {
        const auto id = cell(r, cols.at[0]);
        const BodyMetrics m(numeric(r, cols.at[1], "weight"), parse_mass_unit(cell(r, cols.at[2])),
                            numeric(r, cols.at[3], "height"), parse_length_unit(cell(r, cols.at[4])));
        const double b = bmi(m);
        const double p = ponderal(m);
        const auto cat = classify(m);
        bmis.push_back(b);
        ponderals.push_back(p);
        rb.row({{"line", r.line}, {"id", id}, {"bmi", b}, {"ponderal", p}, {"category", std::string(to_string(cat))}},
               id + "  BMI " + fmt(b) + "  ponderal " + fmt(p) + "  " + std::string(to_string(cat)));
      } catch (const Error& e) {
        rb.error(r.line, e.what());
      }
    }
    rb.summary("rows", bmis.size());
    if (!bmis.empty()) {
      rb.summary("mean_bmi", arithmetic_mean(bmis));
      rb.summary("mean_ponderal", arithmetic_mean(ponderals));
      rb.line("mean BMI " + fmt(arithmetic_mean(bmis)) + "  mean ponderal " + fmt(arithmetic_mean(ponderals)) + "  over " +
              std::to_string(bmis.size()) + " rows");
    }
    return rb.finish(false);
  } catch (const Error& e) {
    return fatal_report("bmi", e.what());
  }
}

}  // namespace scalewise::cli
