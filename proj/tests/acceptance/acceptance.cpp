// Runs the nine acceptance criteria and prints one PASS/FAIL line each.
// Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>

#include "scalewise/airquality.hpp"
#include "scalewise/cli/commands.hpp"
#include "scalewise/error.hpp"
#include "scalewise/exceedance.hpp"
#include "scalewise/scales.hpp"
#include "scalewise/statements.hpp"
#include "scalewise/stats.hpp"

using namespace scalewise;
namespace cli = scalewise::cli;

namespace {

const std::string kData = SCALEWISE_TEST_DATA;

// Collects failed checks for one criterion.
struct Outcome {
  std::vector<std::string> failures;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

bool close_rel(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)}); }

std::string str(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

Outcome breakpoint_fidelity() {
  Outcome o;
  const auto table = BreakpointTable::moderate_bands();
  struct Case {
    const char* pollutant;
    double conc;
    const char* unit;
    double want;
  };
  const Case cases[] = {{"O3", 0.055, "ppm", 51},     {"O3", 0.070, "ppm", 100},   {"CO", 4.5, "ppm", 51},
                        {"CO", 9.4, "ppm", 100},      {"PM2.5", 12.1, "ug/m3", 51}, {"PM2.5", 35.4, "ug/m3", 100}};
  const auto start = std::chrono::steady_clock::now();
  for (const auto& c : cases) {
    const double got = aqi_subindex(c.pollutant, c.conc, c.unit, table);
    o.expect(close_rel(got, c.want, 1e-9), std::string(c.pollutant) + " at " + str(c.conc) + " gave " + str(got));
  }
  const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.expect(elapsed < 1.0, "took " + str(elapsed) + " s");
  o.detail = "6 endpoints, " + str(elapsed * 1e6) + " us";
  return o;
}

Outcome category_fidelity() {
  Outcome o;
  struct Band {
    const char* color;
    const char* name;
    int lo;
    int hi;
  };
  const Band table[] = {{"Green", "Good", 0, 50},
                        {"Yellow", "Moderate", 51, 100},
                        {"Orange", "Unhealthy for Sensitive Groups", 101, 150},
                        {"Red", "Unhealthy", 151, 200},
                        {"Purple", "Very Unhealthy", 201, 300},
                        {"Maroon", "Hazardous", 301, 500}};
  const auto bands = category_bands();
  o.expect(bands.size() == 6, "band count " + std::to_string(bands.size()));
  for (const auto& b : table) {
    for (int v : {b.lo, (b.lo + b.hi) / 2, b.hi}) {
      const auto& c = category(v);
      o.expect(c.name == b.name && c.color == b.color,
               std::to_string(v) + " -> " + std::string(c.name) + "/" + std::string(c.color));
    }
  }
  o.expect(category(301).name == "Hazardous", "301 not Hazardous");
  o.expect(category(50).name == "Good", "50 not Good");
  o.detail = "6 bands, 18 probes";
  return o;
}

Outcome vector_suite() {
  Outcome o;
  const std::array<std::array<double, 5>, 6> vectors{{{25, 25, 301, 25, 25},
                                                      {300, 300, 300, 300, 300},
                                                      {100, 100, 100, 100, 100},
                                                      {10, 10, 10, 10, 100},
                                                      {25, 25, 325, 25, 25},
                                                      {25, 25, 301, 301, 25}}};
  for (const auto& v : vectors) {
    const auto pv = PollutantVector::standard(v);
    const double max = *std::max_element(v.begin(), v.end());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / 5;
    o.expect(overall_aqi(pv).value == max, "max of vector with max " + str(max));
    o.expect(close_rel(bqi(pv), mean, 1e-12), "mean " + str(bqi(pv)) + " vs " + str(mean));
  }
  const auto report = cli::run_aqi(cli::read_input(kData + "/aqi_vectors.csv"), {});
  const auto& div = report.doc["summary"]["max_mean_divergences"];
  auto flagged = [&](const std::string& a, const std::string& b, const std::string& kind) {
    return std::any_of(div.begin(), div.end(), [&](const auto& d) {
      return d["a"] == a + "@2024-01-01" && d["b"] == b + "@2024-01-01" && d["kind"] == kind;
    });
  };
  // v1 = (25,25,301,25,25) ... v6 = (25,25,301,301,25), in file order.
  o.expect(flagged("v1", "v2", "rankings_disagree"), "301-spike vs uniform 300 not flagged");
  o.expect(flagged("v3", "v4", "max_conflates"), "uniform 100 vs single 100 not flagged");
  o.expect(flagged("v1", "v6", "max_conflates"), "one vs two 301 spikes not flagged");
  o.expect(flagged("v5", "v6", "rankings_disagree"), "325 spike vs two 301 spikes not flagged");
  o.detail = "6 vectors, " + std::to_string(div.size()) + " divergences flagged";
  return o;
}

const Bindings kTemp{{"temp", ScaleType::interval, ""}};

Statement random_statement(std::mt19937_64& rng, Bindings& bindings) {
  const ScaleType types[] = {ScaleType::absolute, ScaleType::ratio, ScaleType::interval, ScaleType::ordinal};
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_int_distribution<int> small(1, 4);
  std::uniform_real_distribution<double> value(1, 40);
  auto v = [&] { return std::round(value(rng) * 4) / 4; };

  const auto type = types[pick(rng)];
  const bool shared = pick(rng) % 2 == 0;
  const int nscales = small(rng);
  bindings = Bindings{};
  std::vector<std::string> ids;
  for (int i = 0; i < nscales; ++i) {
    ids.push_back("s" + std::to_string(i));
    bindings.add({ids.back(), type, shared ? "g" : ""});
  }
  auto base = [&](const std::string& who) {
    return Quantity::base(ids[std::uniform_int_distribution<std::size_t>(0, ids.size() - 1)(rng)], who, v());
  };
  auto group = [&](const std::string& who) {
    std::vector<Quantity> g;
    const int n = small(rng);
    for (int k = 0; k < n; ++k) g.push_back(base(who + std::to_string(k)));
    return g;
  };
  const double factor = std::vector<double>{0.5, 1.2, 2, 3}[pick(rng)];

  switch (std::uniform_int_distribution<int>(0, 7)(rng)) {
    case 0:
      return OrderStatement{base("x"), base("y")};
    case 1: {
      auto rhs = base("y");
      auto lhs = pick(rng) < 2 ? Quantity::base(rhs.terms().front().scale_id, "x", factor * rhs.value()) : base("x");
      return RatioStatement{lhs, factor, rhs};
    }
    case 2:
      return ThresholdStatement{base("x"), v(), pick(rng) % 2 == 0};
    case 3:
      return MeanOrderStatement{group("a"), group("b"), static_cast<MeanKind>(pick(rng) % 3)};
    case 4:
      return MeanRatioStatement{group("a"), factor, group("b"), static_cast<MeanKind>(pick(rng) % 3)};
    case 5: {
      auto then = base("t0");
      return PercentChangeStatement{Quantity::base(then.terms().front().scale_id, "t1", factor * then.value()), factor, then};
    }
    case 6: {
      if (ids.size() == 1) return OrderStatement{base("x"), base("y")};
      const auto d = DerivedScale::monomial({{ids.front(), 1}, {ids.back(), -2}});
      return RatioStatement{Quantity::derived(d, "x", {v(), v()}), factor, Quantity::derived(d, "y", {v(), v()})};
    }
    default: {
      if (ids.size() == 1) return OrderStatement{base("x"), base("y")};
      const auto d = DerivedScale::sum({ids.front(), ids.back()});
      return OrderStatement{Quantity::derived(d, "x", {v(), v()}), Quantity::derived(d, "y", {v(), v()})};
    }
  }
}

Outcome verdict_catalog() {
  Outcome o;
  cli::RunConfig config;
  config.validate = true;
  const auto report = cli::run_check(cli::read_input(kData + "/catalog.json"), config);
  const auto& rows = report.doc["rows"];
  o.expect(report.exit_code == cli::kExitClean, "catalog exit code " + std::to_string(report.exit_code));
  o.expect(rows.size() >= 12, "catalog has " + std::to_string(rows.size()) + " fixtures");
  auto verdict_of = [&](const std::string& id) -> std::string {
    for (const auto& r : rows) {
      if (r["id"] == id) return r["verdict"];
    }
    return "missing";
  };
  const std::pair<const char*, const char*> required[] = {
      {"temperature-ratio", "meaningless"},       {"bmi-order", "meaningful"},
      {"bmi-ratio", "meaningful"},                {"bmi-percent-change", "meaningful"},
      {"weight-plus-height", "meaningless"},      {"bmi-threshold-without-units", "meaningless"},
      {"ordinal-arithmetic-mean", "meaningless"}, {"ordinal-median", "meaningful"},
      {"raters-arithmetic-mean", "meaningless"},  {"raters-geometric-mean", "meaningful"}};
  for (const auto& [id, want] : required) {
    const auto got = verdict_of(id);
    o.expect(got == want, std::string(id) + " is " + got);
  }
  for (const auto& r : rows) {
    o.expect(r.value("matches_expectation", false), r["id"].get<std::string>() + " misses its expectation");
    if (r["verdict"] == "meaningless") o.expect(r["witness_replays"].get<bool>(), r["id"].get<std::string>() + " witness does not replay");
  }
  o.expect(report.doc["errors"].empty(), "catalog reported errors");

  // Temperature witness: found within 1000 trials, same witness on a rerun.
  const Statement temp = RatioStatement{Quantity::base("temp", "today", 80), 2, Quantity::base("temp", "yesterday", 40)};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SearchOptions search;
    search.trials = 1000;
    search.seed = seed;
    const auto a = falsify(temp, kTemp, search);
    const auto b = falsify(temp, kTemp, search);
    const auto* ma = std::get_if<Meaningless>(&a.outcome);
    const auto* mb = std::get_if<Meaningless>(&b.outcome);
    o.expect(ma && mb && ma->witness == mb->witness, "temperature seed " + std::to_string(seed));
  }

  // Symbolic and falsifier engines across random statements.
  std::mt19937_64 rng(20240);
  int counts[3] = {0, 0, 0};
  int skipped = 0;
  for (int i = 0; i < 200; ++i) {
    Bindings b;
    const auto s = random_statement(rng, b);
    CheckOptions opts;
    opts.validate = true;
    opts.seed = static_cast<std::uint64_t>(i);
    try {
      const auto v = check(s, b, opts);
      ++counts[v.meaningful() ? 0 : v.meaningless() ? 1 : 2];
      if (const auto* m = std::get_if<Meaningless>(&v.outcome)) {
        o.expect(evaluate_under(s, b, m->witness) == m->truth_after && m->truth_after != m->truth_before,
                 "witness does not replay for " + render(s));
      }
      const auto sym = classify_symbolic(s, b);
      if (sym && !sym->meaningful) o.expect(!v.meaningful(), "symbolic meaningless, verdict meaningful: " + render(s));
    } catch (const InconsistencyError& e) {
      o.failures.push_back(std::string("engines disagree: ") + e.what());
    } catch (const Error&) {
      ++skipped;
    }
  }
  o.detail = std::to_string(rows.size()) + " fixtures; random: " + std::to_string(counts[0]) + " meaningful, " +
             std::to_string(counts[1]) + " meaningless, " + std::to_string(counts[2]) + " undetermined, " +
             std::to_string(skipped) + " outside their form's domain";
  return o;
}

Outcome correlation_oracles() {
  Outcome o;
  std::mt19937_64 rng(5150);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + trial % 8;
    std::vector<double> x(n);
    std::vector<double> y(n);
    std::iota(x.begin(), x.end(), 1.0);
    std::iota(y.begin(), y.end(), 1.0);
    std::shuffle(x.begin(), x.end(), rng);
    std::shuffle(y.begin(), y.end(), rng);
    std::uniform_real_distribution<double> jitter(0, 0.4);
    for (auto& v : x) v = v * 3.7 + jitter(rng);
    for (auto& v : y) v = v * 1.3 - jitter(rng);

    int s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) s += (x[i] - x[j]) * (y[i] - y[j]) > 0 ? 1 : -1;
    }
    const double tau_oracle = 2.0 * s / (n * (n - 1.0));
    auto rank = [&](const std::vector<double>& v) {
      std::vector<double> r(n);
      for (std::size_t i = 0; i < n; ++i) r[i] = 1.0 + std::count_if(v.begin(), v.end(), [&](double w) { return w < v[i]; });
      return r;
    };
    auto pearson = [&](const std::vector<double>& a, const std::vector<double>& b) {
      const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
      const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
      double sab = 0, saa = 0, sbb = 0;
      for (std::size_t i = 0; i < n; ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
      }
      return sab / std::sqrt(saa * sbb);
    };
    const double rho_oracle = pearson(rank(x), rank(y));

    const PairedSample sample(x, y);
    const double tau = kendall_tau(sample);
    const double rho = spearman_rho(sample);
    const double r = pearson_r(sample);
    o.expect(std::abs(tau - tau_oracle) <= 1e-12, "tau trial " + std::to_string(trial));
    o.expect(std::abs(rho - rho_oracle) <= 1e-12, "rho trial " + std::to_string(trial));

    auto mapped = [&](const std::vector<double>& v, const Transform& t) {
      std::vector<double> out;
      for (double e : v) out.push_back(t(e));
      return out;
    };
    const auto seed = static_cast<std::uint64_t>(trial);
    const auto mx = sample_transform(ScaleType::ordinal, seed, 0, x, 0);
    const auto my = sample_transform(ScaleType::ordinal, seed, 0, y, 1);
    const PairedSample monotone(mapped(x, mx), mapped(y, my));
    o.expect(std::abs(kendall_tau(monotone) - tau) <= 1e-12, "tau not invariant, trial " + std::to_string(trial));
    o.expect(std::abs(spearman_rho(monotone) - rho) <= 1e-12, "rho not invariant, trial " + std::to_string(trial));
    const auto ax = sample_transform(ScaleType::interval, seed, 1, {}, 0);
    const auto ay = sample_transform(ScaleType::interval, seed, 1, {}, 1);
    const PairedSample affine(mapped(x, ax), mapped(y, ay));
    o.expect(std::abs(pearson_r(affine) - r) <= 1e-12,
             "r not invariant, trial " + std::to_string(trial) + ": " + str(pearson_r(affine) - r));
    o.expect(std::abs(kendall_tau(affine) - tau) <= 1e-12, "tau not affine-invariant, trial " + std::to_string(trial));
    ++checked;
  }
  o.detail = std::to_string(checked) + " samples, n in [3, 10]";
  return o;
}

Outcome regression_recovery() {
  Outcome o;
  const std::pair<double, double> lines[] = {{1.446, -3.6}, {1.816, -13.99}};
  for (const auto& [slope, intercept] : lines) {
    std::vector<double> x;
    std::vector<double> y;
    for (double v = 15; v <= 40; v += 2.5) {
      x.push_back(v);
      y.push_back(slope * v + intercept);
    }
    const auto fit = linear_regression(PairedSample(x, y));
    o.expect(std::abs(fit.slope - slope) <= 1e-9, "slope " + str(fit.slope));
    o.expect(std::abs(fit.intercept - intercept) <= 1e-9, "intercept " + str(fit.intercept));
    o.expect(std::abs(fit.r_squared - 1.0) <= 1e-12, "r^2 " + str(fit.r_squared));
  }
  o.detail = "2 lines, 11 points each";
  return o;
}

double shannon_oracle(const std::vector<double>& v) {
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  double h = 0;
  for (double e : v) {
    if (e > 0) h -= (e / total) * std::log(e / total);
  }
  return h;
}

Outcome shannon_bounds() {
  Outcome o;
  for (int n = 2; n <= 10; ++n) {
    const std::vector<double> uniform(n, 7.5);
    o.expect(std::abs(shannon_index(uniform) - std::log(n)) <= 1e-12, "uniform n=" + std::to_string(n));
  }
  const std::vector<double> skewed{10, 10, 10, 10, 100};
  const double h = shannon_index(skewed);
  o.expect(std::abs(h - shannon_oracle(skewed)) <= 1e-4, "H(10,10,10,10,100) = " + str(h));

  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> value(0, 500);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> v(2 + i % 9);
    for (auto& e : v) e = value(rng);
    const double base = shannon_index(v);
    auto permuted = v;
    std::shuffle(permuted.begin(), permuted.end(), rng);
    auto scaled = v;
    const double k = scale(rng);
    for (auto& e : scaled) e *= k;
    o.expect(std::abs(shannon_index(permuted) - base) <= 1e-12, "permutation, vector " + std::to_string(i));
    o.expect(std::abs(shannon_index(scaled) - base) <= 1e-12, "scale, vector " + std::to_string(i));
  }
  o.detail = "H(10,10,10,10,100) = " + str(h) + ", direct evaluation";
  return o;
}

Outcome fiscal_year() {
  Outcome o;
  const auto input = cli::read_input(kData + "/exceedance.csv");
  struct Case {
    const char* start;
    int earlier;
    int later;
    double relative;
  };
  for (const auto& c : {Case{"01-01", 180, 200, 0.10}, Case{"10-01", 272, 292, 20.0 / 292}}) {
    cli::RunConfig config;
    config.year_start = parse_year_start(c.start);
    const auto r = cli::run_exceedance(input, config);
    const auto& shifts = r.doc["summary"]["shifts"];
    if (r.exit_code != cli::kExitClean || shifts.size() != 1) {
      o.failures.push_back(std::string("year start ") + c.start + ": no single shift");
      continue;
    }
    const auto& s = shifts[0];
    o.expect(s["earlier_day"] == c.earlier && s["later_day"] == c.later,
             std::string(c.start) + ": " + s["earlier_day"].dump() + " -> " + s["later_day"].dump());
    o.expect(std::abs(s["relative"].get<double>() - c.relative) <= 1e-12, std::string(c.start) + " relative");
    o.expect(r.doc["config"]["year_start"] == c.start, "year start not disclosed");
  }
  o.detail = "day 200 vs 180 is 10%; day 292 vs 272 is " + str(100 * 20.0 / 292) + "%";
  return o;
}

using Runner = cli::Report (*)(const cli::Input&, const cli::RunConfig&);

struct SuiteEntry {
  Runner run;
  const char* file;
  const char* args;
  const char* year_start = "01-01";
};

const SuiteEntry kSuite[] = {
    {cli::run_bmi, "bmi.csv", "bmi"},
    {cli::run_bmi, "bmi_errors.csv", "bmi"},
    {cli::run_aqi, "aqi.csv", "aqi"},
    {cli::run_aqi, "aqi_errors.csv", "aqi"},
    {cli::run_aqi, "aqi_vectors.csv", "aqi"},
    {cli::run_check, "catalog.json", "check"},
    {cli::run_stats, "stats_random.csv", "stats"},
    {cli::run_stats, "stats_linear.csv", "stats"},
    {cli::run_emissions, "emissions.csv", "pollution emissions"},
    {cli::run_cities, "cities.csv", "pollution cities"},
    {cli::run_asi, "asi.csv", "pollution asi"},
    {cli::run_exceedance, "exceedance.csv", "pollution exceedance", "01-01"},
    {cli::run_exceedance, "exceedance.csv", "pollution exceedance", "10-01"},
};

std::string suite_in_process(std::uint64_t seed) {
  std::string out;
  for (const auto& e : kSuite) {
    cli::RunConfig config;
    config.seed = seed;
    config.format = cli::Format::structured;
    config.year_start = parse_year_start(e.year_start);
    out += cli::render(e.run(cli::read_input(kData + "/" + e.file), config), cli::Format::structured);
  }
  return out;
}

std::string capture(const std::string& command) {
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(command.c_str(), "r"), pclose);
  if (!pipe) return {};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
  return out;
}

std::string suite_binary(std::uint64_t seed) {
  std::string out;
  for (const auto& e : kSuite) {
    out += capture(std::string(SCALEWISE_TOOL) + " --format structured --seed " + std::to_string(seed) + " --year-start " +
                   e.year_start + " " + e.args + " " + kData + "/" + e.file);
  }
  return out;
}

Outcome determinism() {
  Outcome o;
  const auto a = suite_in_process(99);
  const auto b = suite_in_process(99);
  o.expect(a == b, "in-process runs differ");
  const auto c = suite_binary(99);
  const auto d = suite_binary(99);
  o.expect(!c.empty() && c == d, "binary runs differ");
  o.expect(a == c, "binary output differs from in-process output");
  o.detail = std::to_string(std::size(kSuite)) + " fixture runs, " + std::to_string(a.size()) + " bytes";
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"AQI breakpoint fidelity", breakpoint_fidelity},
      {"category table fidelity", category_fidelity},
      {"pollutant vector suite", vector_suite},
      {"meaningfulness verdict catalog", verdict_catalog},
      {"correlation oracle equivalence", correlation_oracles},
      {"regression recovery", regression_recovery},
      {"Shannon bounds", shannon_bounds},
      {"fiscal-year demonstration", fiscal_year},
      {"determinism", determinism},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.failures.push_back(std::string("threw: ") + e.what());
    }
    const bool ok = o.failures.empty();
    failed += ok ? 0 : 1;
    std::cout << (ok ? "PASS" : "FAIL") << " " << index << " " << name;
    if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
    std::cout << "\n";
    for (std::size_t i = 0; i < o.failures.size() && i < 10; ++i) std::cout << "    " << o.failures[i] << "\n";
  }
  return failed == 0 ? 0 : 1;
}
