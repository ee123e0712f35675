#pragma once

// Structured documents (JSON, format_version 1) for statements, breakpoint
// tables and tolerance tables, and JSON forms of verdicts.
//
// Statement document:
//
//   {
//     "format_version": 1,
//     "scales": [{"id": "W", "type": "ratio", "group": "body"}, ...],
//     "derived": {"bmi": {"form": "monomial",
//                         "terms": [{"scale": "W", "exponent": 1},
//                                   {"scale": "H", "exponent": -2}]}},
//     "statements": [
//       {"id": "...", "form": "ratio",
//        "lhs": {"derived": "bmi", "entity": "x", "values": [90, 1.5]},
//        "factor": 2,
//        "rhs": {"scale": "W", "entity": "y", "value": 80},
//        "scales": [...],            // optional, replaces the top-level list
//        "annotations": {...},       // passed through untouched
//        "expect": "meaningful"}     // optional
//     ]
//   }
//
// "statement" (a single object) may stand in for "statements".

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "scalewise/airquality.hpp"
#include "scalewise/statements.hpp"

namespace scalewise::cli {

using nlohmann::json;

inline constexpr int kFormatVersion = 1;

struct StatementEntry {
  std::string id;
  Statement statement;
  Bindings bindings;
  json annotations;  // null when absent
  std::optional<std::string> expect;
};

/// A statement that failed schema checks; the rest of the document still loads.
struct StatementIssue {
  std::string id;
  std::string path;
  std::string message;
};

struct StatementDocument {
  std::vector<StatementEntry> entries;
  std::vector<StatementIssue> issues;
};

/// Throws SchemaError for document-level problems (format version, top-level
/// shape, malformed "scales"/"derived"). Problems inside one statement are
/// collected in `issues`.
StatementDocument load_statement_document(const json& doc);

/// Parses one statement object. Throws SchemaError with a path below `path`.
StatementEntry parse_statement(const json& node, const Bindings& bindings,
                               const std::map<std::string, DerivedScale, std::less<>>& derived,
                               const std::string& path);

/// {"format_version": 1, "name": "...", "pollutants": [{"pollutant": "O3",
/// "unit": "ppm", "averaging_period": "8h", "segments": [[c_lo, c_hi, i_lo,
/// i_hi], ...]}]}. Throws SchemaError or ConfigError.
BreakpointTable load_breakpoints(const json& doc);
json to_json(const BreakpointTable& table);

/// {"format_version": 1, "name": "...", "tolerances": {"CO": 7800, ...}}.
ToleranceTable load_tolerances(const json& doc);
json to_json(const ToleranceTable& table);

json to_json(const Transform& t);
json to_json(const Witness& w);
json to_json(const Quantity& q);
json to_json(const Statement& s);
json to_json(const Bindings& b);

/// Parses the output of to_json(Transform). Throws SchemaError.
Transform transform_from_json(const json& node, const std::string& path);

/// Throws SchemaError if the text is not JSON.
json parse_json(const std::string& text, const std::string& what);

}  // namespace scalewise::cli
