#include "common.hpp"
#include "scalewise/cli/commands.hpp"
#include "scalewise/stats.hpp"

namespace scalewise::cli {

using namespace detail;

Report run_stats(const Input& input, const RunConfig& config) {
  try {
    const auto t = parse_csv(input.text);
    ReportBuilder rb("stats", input, base_config(config));
    if (t.rows.empty()) return rb.finish(true);
    if (t.header.size() < 2) return fatal_report("stats", "need two numeric columns");

    std::vector<double> x;
    std::vector<double> y;
    for (const auto& r : t.rows) {
      try {
        const double a = numeric(r, 0, t.header[0]);
        const double b = numeric(r, 1, t.header[1]);
        x.push_back(a);
        y.push_back(b);
      } catch (const Error& e) {
        rb.error(r.line, e.what());
      }
    }
    const PairedSample s(x, y);
    rb.summary("n", s.size());
    rb.summary("columns", {t.header[0], t.header[1]});
    rb.line("n " + std::to_string(s.size()) + "  x=" + t.header[0] + "  y=" + t.header[1]);

    auto attempt = [&](const char* name, auto&& f) {
      try {
        const double v = f();
        rb.summary(name, v);
        rb.line(std::string(name) + " " + fmt(v));
        return std::optional<double>(v);
      } catch (const Error& e) {
        rb.summary(name, nullptr);
        rb.error(name, e.what());
        return std::optional<double>();
      }
    };
    attempt("kendall_tau", [&] { return kendall_tau(s); });
    attempt("spearman_rho", [&] { return spearman_rho(s); });
    const auto r = attempt("pearson_r", [&] { return pearson_r(s); });

    try {
      const auto line = linear_regression(s);
      rb.summary("regression", {{"slope", line.slope}, {"intercept", line.intercept}, {"r_squared", line.r_squared}});
      rb.line("regression y = " + fmt(line.slope) + " x + " + fmt(line.intercept) + "  r^2 " + fmt(line.r_squared));
    } catch (const Error& e) {
      rb.summary("regression", nullptr);
      rb.error("regression", e.what());
    }

    json advisory = json::array();
    if (r) {
      for (const auto& d : discipline_thresholds()) {
        const bool corr = std::abs(*r) >= d.min_abs_correlation;
        const bool fit = (*r) * (*r) >= d.min_r_squared;
        advisory.push_back({{"discipline", d.discipline},
                            {"min_abs_correlation", d.min_abs_correlation},
                            {"min_r_squared", d.min_r_squared},
                            {"correlation_high", corr},
                            {"fit_high", fit}});
        rb.line("advisory " + std::string(d.discipline) + ": |r| >= " + fmt(d.min_abs_correlation) +
                (corr ? " met" : " not met") + ", r^2 >= " + fmt(d.min_r_squared) + (fit ? " met" : " not met"));
      }
    }
    rb.summary("advisory", std::move(advisory));
    return rb.finish(false);
  } catch (const Error& e) {
    return fatal_report("stats", e.what());
  }
}

}  // namespace scalewise::cli
