#pragma once

// One function per CLI command. Each takes the input document already read
// and never throws: fatal problems come back as a report with exit code 1,
// row-level problems as report errors with exit code 2.

#include <string>

#include "scalewise/cli/report.hpp"

namespace scalewise::cli {

/// CSV: id, weight, weight_unit, height, height_unit.
Report run_bmi(const Input& csv, const RunConfig& config);

/// CSV: location, date, pollutant, concentration, unit. A `subindex` column
/// in place of concentration/unit takes precomputed sub-indices.
Report run_aqi(const Input& csv, const RunConfig& config);

/// Statement document (see documents.hpp).
Report run_check(const Input& doc, const RunConfig& config);

/// CSV with two numeric columns (the first two of the header).
Report run_stats(const Input& csv, const RunConfig& config);

/// CSV: pollutant, period, source, mass, unit.
Report run_emissions(const Input& csv, const RunConfig& config);

/// CSV: country, city, pm25, population.
Report run_cities(const Input& csv, const RunConfig& config);

/// CSV: period, pollutant, count, reference.
Report run_asi(const Input& csv, const RunConfig& config);

/// CSV: date, exceeded (1/0, true/false, yes/no).
Report run_exceedance(const Input& csv, const RunConfig& config);

}  // namespace scalewise::cli
