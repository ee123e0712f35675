#include <map>

#include "common.hpp"
#include "scalewise/cli/commands.hpp"
#include "scalewise/cli/documents.hpp"

namespace scalewise::cli {

namespace {

bool blank(const std::string& s) { return s.find_first_not_of(" \t\r\n") == std::string::npos; }

json verdict_json(const Statement& s, const Bindings& b, const Verdict& v, double tol) {
  json out = {{"verdict", std::string(v.label())}};
  std::visit(
      [&](const auto& o) {
        using O = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<O, Meaningful>) {
          out["rule"] = o.rule;
        } else if constexpr (std::is_same_v<O, Meaningless>) {
          out["rule"] = o.rule.empty() ? json(nullptr) : json(o.rule);
          out["witness"] = to_json(o.witness);
          out["truth_before"] = o.truth_before;
          out["truth_after"] = o.truth_after;
          out["witness_replays"] = evaluate_under(s, b, o.witness, tol) == o.truth_after;
        } else {
          out["trials"] = o.trials;
          out["note"] = o.note.empty() ? json(nullptr) : json(o.note);
        }
      },
      v.outcome);
  return out;
}

std::string verdict_text(const Verdict& v) {
  return std::visit(
      [](const auto& o) -> std::string {
        using O = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<O, Meaningful>) {
          return "meaningful (" + o.rule + ")";
        } else if constexpr (std::is_same_v<O, Meaningless>) {
          std::string w;
          for (const auto& e : o.witness) w += (w.empty() ? "" : ", ") + e.scale_id + " -> " + to_json(e.transform).dump();
          return "meaningless" + (o.rule.empty() ? std::string() : " (" + o.rule + ")") + "; " +
                 (o.truth_before ? "true" : "false") + " becomes " + (o.truth_after ? "true" : "false") + " under " + w;
        } else {
          return "undetermined after " + std::to_string(o.trials) + " trials" + (o.note.empty() ? "" : "; " + o.note);
        }
      },
      v.outcome);
}

}  // namespace

Report run_check(const Input& input, const RunConfig& config) {
  try {
    json cfg = base_config(config);
    cfg["validate"] = config.validate;
    ReportBuilder rb("check", input, cfg);
    if (blank(input.text)) return rb.finish(true);

    const auto doc = load_statement_document(parse_json(input.text, input.name));
    if (doc.entries.empty() && doc.issues.empty()) return rb.finish(true);

    CheckOptions opts;
    opts.seed = config.seed;
    opts.trials = config.trials;
    opts.rel_tol = config.tolerance;
    opts.validate = config.validate;

    std::map<std::string, int> counts;
    int mismatches = 0;
    for (const auto& e : doc.entries) {
      try {
        const bool truth = evaluate(e.statement, e.bindings, config.tolerance);
        const auto v = check(e.statement, e.bindings, opts);
        json row = verdict_json(e.statement, e.bindings, v, config.tolerance);
        row["id"] = e.id;
        row["form"] = std::string(form_name(e.statement));
        row["statement"] = render(e.statement);
        row["truth"] = truth;
        row["scales"] = to_json(e.bindings);
        row["annotations"] = e.annotations;
        std::string suffix;
        if (e.expect) {
          const bool ok = *e.expect == v.label();
          row["expect"] = *e.expect;
          row["matches_expectation"] = ok;
          if (!ok) {
            ++mismatches;
            suffix = "  [expected " + *e.expect + "]";
          }
        }
        ++counts[std::string(v.label())];
        rb.row(std::move(row), e.id + ": " + render(e.statement) + "  => " + verdict_text(v) + suffix);
      } catch (const InconsistencyError& ex) {
        rb.error(e.id, std::string("engines disagree: ") + ex.what());
      } catch (const Error& ex) {
        rb.error(e.id, ex.what());
      }
    }
    for (const auto& issue : doc.issues) rb.error(issue.path, issue.message);

    json c = json::object();
    for (const auto* label : {"meaningful", "meaningless", "undetermined"}) c[label] = counts[label];
    rb.summary("verdicts", c);
    rb.summary("expectation_mismatches", mismatches);
    return rb.finish(false);
  } catch (const SchemaError& e) {
    return fatal_report("check", e.what());
  } catch (const Error& e) {
    return fatal_report("check", e.what());
  }
}

}  // namespace scalewise::cli
