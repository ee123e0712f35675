#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scalewise/cli/csv.hpp"
#include "scalewise/cli/report.hpp"
#include "scalewise/error.hpp"

namespace scalewise::cli::detail {

/// Column positions for the named header fields, or the list of missing ones.
struct Columns {
  std::vector<std::size_t> at;
  std::vector<std::string> missing;
};

inline Columns columns(const CsvTable& t, std::initializer_list<const char*> names) {
  Columns c;
  for (const char* n : names) {
    if (auto i = t.column(n)) {
      c.at.push_back(*i);
    } else {
      c.missing.push_back(n);
    }
  }
  return c;
}

inline std::string joined(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ", ") + s;
  return out;
}

inline std::string cell(const CsvRow& r, std::size_t i) {
  if (i >= r.fields.size()) throw DomainError("missing column " + std::to_string(i + 1));
  return std::string(trim(r.fields[i]));
}

inline double numeric(const CsvRow& r, std::size_t i, const std::string& what) {
  const auto text = cell(r, i);
  auto v = parse_double(text);
  if (!v) throw DomainError(what + " '" + text + "' is not a number");
  return *v;
}

inline std::uint64_t count(const CsvRow& r, std::size_t i, const std::string& what) {
  const double v = numeric(r, i, what);
  if (v < 0 || v != static_cast<double>(static_cast<std::uint64_t>(v))) {
    throw DomainError(what + " must be a non-negative integer");
  }
  return static_cast<std::uint64_t>(v);
}

}  // namespace scalewise::cli::detail
