#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "scalewise/exceedance.hpp"
#include "scalewise/statements.hpp"

namespace scalewise::cli {

using nlohmann::json;

enum class Format { text, structured };

enum ExitCode : int { kExitClean = 0, kExitFatal = 1, kExitPartial = 2, kExitEmpty = 3 };

struct RunConfig {
  std::uint64_t seed = 0;
  int trials = kDefaultTrials;
  double tolerance = kDefaultRelTol;
  YearStart year_start{};
  std::uint64_t threshold_count = 100;
  std::string breakpoints_path;  // empty: built-in moderate bands
  std::string tolerances_path;   // empty: built-in 1971 table
  bool validate = false;
  Format format = Format::text;
};

/// Input document: display name (no directories) and contents.
struct Input {
  std::string name;
  std::string text;
};

/// Throws scalewise::Error when the file cannot be read.
Input read_input(const std::string& path);

struct Report {
  json doc = json::object();
  std::vector<std::string> lines;
  int exit_code = kExitClean;
};

/// Collects rows, row-level errors and provenance for one command run.
class ReportBuilder {
 public:
  ReportBuilder(std::string command, const Input& input, json config);

  void table(const std::string& role, const json& table_doc);
  void row(json row, std::string text);
  void error(std::size_t line, const std::string& message);
  void error(const std::string& where, const std::string& message);
  void summary(const std::string& key, json value);
  void line(std::string text);

  /// Seals the report: exit status from rows/errors, hashes, header lines.
  Report finish(bool empty_input);

 private:
  std::string command_;
  json config_;
  json input_;
  json tables_ = json::object();
  json rows_ = json::array();
  json errors_ = json::array();
  json summary_ = json::object();
  std::vector<std::string> body_;
  std::vector<std::string> error_lines_;
};

Report fatal_report(const std::string& command, const std::string& message);

std::string render(const Report& report, Format format);

/// Config fields shared by every report.
json base_config(const RunConfig& config);

/// Number for text output.
std::string fmt(double v);

}  // namespace scalewise::cli
