#include <iostream>
#include <iterator>
#include <map>

#include "CLI11.hpp"
#include "scalewise/cli/commands.hpp"
#include "scalewise/error.hpp"

namespace cli = scalewise::cli;

namespace {

using Runner = cli::Report (*)(const cli::Input&, const cli::RunConfig&);

cli::Input load(const std::string& path) {
  if (path == "-") {
    return {"<stdin>", std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>())};
  }
  return cli::read_input(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Meaningfulness checks for statements about measured quantities, plus health and air-quality indices"};
  app.require_subcommand(1);

  cli::RunConfig config;
  std::string year_start = "01-01";
  std::string path;
  std::map<std::string, cli::Format> formats{{"text", cli::Format::text}, {"structured", cli::Format::structured}};

  app.add_option("--seed", config.seed, "Seed for the transform sampler")->capture_default_str();
  app.add_option("--trials", config.trials, "Random transforms tried per statement")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--tolerance", config.tolerance, "Relative tolerance for equality")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--format", config.format, "Output format: text or structured")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case).description(""))
      ->default_str("text");
  app.add_option("--year-start", year_start, "First day of the reporting year, MM-DD")->capture_default_str();
  app.add_option("--threshold", config.threshold_count, "Exceedance days that count as reaching the threshold")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--breakpoints", config.breakpoints_path, "AQI breakpoint table (JSON)");
  app.add_option("--tolerances", config.tolerances_path, "Pollutant tolerance table (JSON)");
  app.add_flag("--validate", config.validate, "Run the falsifier even when a symbolic rule applies");
  app.fallthrough();

  std::map<CLI::App*, Runner> runners;
  auto command = [&](CLI::App& parent, const std::string& name, const std::string& help, Runner run) {
    auto* sub = parent.add_subcommand(name, help);
    sub->add_option("input", path, "Input file, or - for stdin")->required();
    sub->fallthrough();
    runners[sub] = run;
  };

  command(app, "bmi", "Body-mass and ponderal index per row", cli::run_bmi);
  command(app, "aqi", "Air-quality sub-indices, overall index and alternatives per site", cli::run_aqi);
  command(app, "check", "Meaningfulness verdicts for a statement document", cli::run_check);
  command(app, "stats", "Rank and linear association between two columns", cli::run_stats);

  auto* pollution = app.add_subcommand("pollution", "Emission and exposure indices");
  pollution->require_subcommand(1);
  pollution->fallthrough();
  command(*pollution, "emissions", "Index A and Pindex per period and source", cli::run_emissions);
  command(*pollution, "cities", "Population-weighted PM2.5 per country", cli::run_cities);
  command(*pollution, "asi", "Air-severity index per period", cli::run_asi);
  command(*pollution, "exceedance", "Days to reach the exceedance threshold per year", cli::run_exceedance);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : cli::kExitFatal;
  }

  cli::Report report;
  try {
    config.year_start = scalewise::parse_year_start(year_start);
    Runner run = nullptr;
    for (const auto& [sub, r] : runners) {
      if (sub->parsed()) run = r;
    }
    report = run(load(path), config);
  } catch (const scalewise::Error& e) {
    report = cli::fatal_report(app.get_subcommands().front()->get_name(), e.what());
  }
  std::cout << cli::render(report, config.format);
  return report.exit_code;
}
