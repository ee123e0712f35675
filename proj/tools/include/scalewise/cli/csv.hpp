#pragma once

// Minimal RFC 4180 reader: comma separated, double-quoted fields with ""
// escapes, LF or CRLF line ends, header row required. Blank lines are skipped.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scalewise::cli {

struct CsvRow {
  std::size_t line = 0;  // 1-based line of the row's first character
  std::vector<std::string> fields;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<CsvRow> rows;

  /// Column index by (trimmed, case-sensitive) header name.
  std::optional<std::size_t> column(std::string_view name) const;
  bool empty() const noexcept { return header.empty() && rows.empty(); }
};

/// Throws scalewise::SchemaError (path "line N") on an unterminated quote.
CsvTable parse_csv(std::string_view text);

/// Whole-field numeric parse; surrounding blanks allowed. nullopt on anything else.
std::optional<double> parse_double(std::string_view text);
std::string_view trim(std::string_view s) noexcept;

}  // namespace scalewise::cli
