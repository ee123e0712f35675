#include "scalewise/cli/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "scalewise/cli/documents.hpp"
#include "scalewise/cli/provenance.hpp"
#include "scalewise/error.hpp"
#include "scalewise/format.hpp"

namespace scalewise::cli {

Input read_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error("error reading '" + path + "'");
  return Input{std::filesystem::path(path).filename().string(), ss.str()};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

json base_config(const RunConfig& c) {
  return {{"seed", c.seed}, {"trials", c.trials}, {"tolerance", c.tolerance}};
}

ReportBuilder::ReportBuilder(std::string command, const Input& input, json config)
    : command_(std::move(command)), config_(std::move(config)) {
  input_ = {{"name", input.name}, {"hash", hash_hex(input.text)}, {"bytes", input.text.size()}};
}

void ReportBuilder::table(const std::string& role, const json& table_doc) {
  tables_[role] = {{"name", table_doc.value("name", "")}, {"hash", canonical_hash(table_doc)}};
}

void ReportBuilder::row(json row, std::string text) {
  rows_.push_back(std::move(row));
  body_.push_back(std::move(text));
}

void ReportBuilder::error(std::size_t line, const std::string& message) {
  errors_.push_back({{"line", line}, {"message", message}});
  error_lines_.push_back("error: line " + std::to_string(line) + ": " + message);
}

void ReportBuilder::error(const std::string& where, const std::string& message) {
  errors_.push_back({{"where", where}, {"message", message}});
  error_lines_.push_back("error: " + where + ": " + message);
}

void ReportBuilder::summary(const std::string& key, json value) { summary_[key] = std::move(value); }

void ReportBuilder::line(std::string text) { body_.push_back(std::move(text)); }

Report ReportBuilder::finish(bool empty_input) {
  Report r;
  std::string status = "clean";
  if (empty_input) {
    r.exit_code = kExitEmpty;
    status = "empty";
  } else if (!errors_.empty()) {
    r.exit_code = kExitPartial;
    status = "partial";
  }
  const json identity = {{"command", command_}, {"config", config_}, {"tables", tables_}};
  const auto config_hash = canonical_hash(identity);

  r.doc = {{"format_version", kFormatVersion},
           {"command", command_},
           {"status", status},
           {"config", config_},
           {"provenance", {{"config_hash", config_hash}, {"input", input_}, {"tables", tables_}}},
           {"rows", rows_},
           {"errors", errors_},
           {"summary", summary_}};

  r.lines.push_back("scalewise " + command_ + "  status " + status);
  r.lines.push_back("config " + config_hash + "  " + config_.dump());
  r.lines.push_back("input " + input_["name"].get<std::string>() + "  " + input_["hash"].get<std::string>());
  for (const auto& [role, t] : tables_.items()) {
    r.lines.push_back("table " + role + " " + t["name"].get<std::string>() + "  " + t["hash"].get<std::string>());
  }
  r.lines.push_back("");
  for (auto& l : body_) r.lines.push_back(std::move(l));
  for (auto& l : error_lines_) r.lines.push_back(std::move(l));
  return r;
}

Report fatal_report(const std::string& command, const std::string& message) {
  Report r;
  r.exit_code = kExitFatal;
  r.doc = {{"format_version", kFormatVersion}, {"command", command}, {"status", "fatal"}, {"error", message}};
  r.lines.push_back("scalewise " + command + "  status fatal");
  r.lines.push_back("error: " + message);
  return r;
}

std::string render(const Report& report, Format format) {
  if (format == Format::structured) return report.doc.dump(2) + "\n";
  std::string out;
  for (const auto& l : report.lines) out += l + "\n";
  return out;
}

}  // namespace scalewise::cli
