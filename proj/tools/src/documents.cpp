#include "scalewise/cli/documents.hpp"

#include <cmath>

#include "scalewise/error.hpp"

namespace scalewise::cli {

namespace {

std::string child(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const json& field(const json& node, const std::string& key, const std::string& path) {
  if (!node.is_object()) throw SchemaError(path.empty() ? "$" : path, "expected an object");
  auto it = node.find(key);
  if (it == node.end()) throw SchemaError(child(path, key), "missing field");
  return *it;
}

const json* optional_field(const json& node, const std::string& key) {
  auto it = node.find(key);
  return it == node.end() || it->is_null() ? nullptr : &*it;
}

double number(const json& node, const std::string& path) {
  if (!node.is_number()) throw SchemaError(path, "expected a number");
  const double v = node.get<double>();
  if (!std::isfinite(v)) throw SchemaError(path, "expected a finite number");
  return v;
}

std::string string(const json& node, const std::string& path) {
  if (!node.is_string()) throw SchemaError(path, "expected a string");
  return node.get<std::string>();
}

const json& array(const json& node, const std::string& path) {
  if (!node.is_array()) throw SchemaError(path, "expected an array");
  return node;
}

void check_version(const json& doc) {
  const auto& v = field(doc, "format_version", "");
  if (!v.is_number_integer() || v.get<int>() != kFormatVersion) {
    throw SchemaError("format_version", "unsupported format version (expected " + std::to_string(kFormatVersion) + ")");
  }
}

Bindings parse_scales(const json& node, const std::string& path) {
  Bindings b;
  const auto& list = array(node, path);
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto p = index(path, i);
    ScaleBinding sb;
    sb.scale_id = string(field(list[i], "id", p), child(p, "id"));
    try {
      sb.scale_type = parse_scale_type(string(field(list[i], "type", p), child(p, "type")));
    } catch (const SchemaError& e) {
      throw SchemaError(child(p, "type"), e.what());
    }
    if (const auto* g = optional_field(list[i], "group")) sb.independence_group = string(*g, child(p, "group"));
    try {
      b.add(std::move(sb));
    } catch (const BindingError& e) {
      throw SchemaError(p, e.what());
    }
  }
  return b;
}

std::map<std::string, DerivedScale, std::less<>> parse_derived(const json& node, const std::string& path) {
  std::map<std::string, DerivedScale, std::less<>> out;
  if (!node.is_object()) throw SchemaError(path, "expected an object of derived scales");
  for (const auto& [name, def] : node.items()) {
    const auto p = child(path, name);
    const auto form = string(field(def, "form", p), child(p, "form"));
    const auto& terms = array(field(def, "terms", p), child(p, "terms"));
    if (terms.empty()) throw SchemaError(child(p, "terms"), "needs at least one term");
    std::vector<Term> parsed;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const auto tp = index(child(p, "terms"), i);
      Term t;
      t.scale_id = string(field(terms[i], "scale", tp), child(tp, "scale"));
      if (const auto* e = optional_field(terms[i], "exponent")) {
        if (!e->is_number_integer()) throw SchemaError(child(tp, "exponent"), "expected an integer");
        t.exponent = e->get<int>();
      }
      parsed.push_back(std::move(t));
    }
    if (form == "monomial") {
      out.emplace(name, DerivedScale::monomial(std::move(parsed)));
    } else if (form == "sum") {
      std::vector<std::string> ids;
      for (std::size_t i = 0; i < parsed.size(); ++i) {
        if (parsed[i].exponent != 1) throw SchemaError(index(child(p, "terms"), i) + ".exponent", "sum terms take no exponent");
        ids.push_back(parsed[i].scale_id);
      }
      out.emplace(name, DerivedScale::sum(std::move(ids)));
    } else {
      throw SchemaError(child(p, "form"), "expected \"monomial\" or \"sum\"");
    }
  }
  return out;
}

Quantity parse_quantity(const json& node, const Bindings& bindings,
                        const std::map<std::string, DerivedScale, std::less<>>& derived, const std::string& path) {
  const auto entity = string(field(node, "entity", path), child(path, "entity"));
  if (const auto* name = optional_field(node, "derived")) {
    const auto key = string(*name, child(path, "derived"));
    auto it = derived.find(key);
    if (it == derived.end()) throw SchemaError(child(path, "derived"), "unknown derived scale '" + key + "'");
    const auto& vals = array(field(node, "values", path), child(path, "values"));
    std::vector<double> values;
    for (std::size_t i = 0; i < vals.size(); ++i) values.push_back(number(vals[i], index(child(path, "values"), i)));
    if (values.size() != it->second.terms.size()) {
      throw SchemaError(child(path, "values"), "expected " + std::to_string(it->second.terms.size()) + " values");
    }
    for (const auto& t : it->second.terms) {
      if (!bindings.contains(t.scale_id)) {
        throw SchemaError(child(path, "derived"), "term scale '" + t.scale_id + "' is not declared in scales");
      }
    }
    return Quantity::derived(it->second, entity, std::move(values));
  }
  const auto scale = string(field(node, "scale", path), child(path, "scale"));
  if (!bindings.contains(scale)) throw SchemaError(child(path, "scale"), "scale '" + scale + "' is not declared in scales");
  return Quantity::base(scale, entity, number(field(node, "value", path), child(path, "value")));
}

std::vector<Quantity> parse_group(const json& node, const Bindings& bindings,
                                  const std::map<std::string, DerivedScale, std::less<>>& derived,
                                  const std::string& path) {
  const auto& list = array(node, path);
  if (list.empty()) throw SchemaError(path, "group is empty");
  std::vector<Quantity> out;
  for (std::size_t i = 0; i < list.size(); ++i) out.push_back(parse_quantity(list[i], bindings, derived, index(path, i)));
  return out;
}

double parse_factor(const json& node, const std::string& path) {
  const double f = number(field(node, "factor", path), child(path, "factor"));
  if (!(f > 0.0)) throw SchemaError(child(path, "factor"), "factor must be positive");
  return f;
}

MeanKind parse_mean(const json& node, const std::string& path) {
  const auto* m = optional_field(node, "mean");
  if (!m) return MeanKind::arithmetic;
  try {
    return parse_mean_kind(string(*m, child(path, "mean")));
  } catch (const SchemaError& e) {
    if (!e.path().empty()) throw;
    throw SchemaError(child(path, "mean"), "expected arithmetic, geometric or median");
  }
}

}  // namespace

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(what, std::string("not valid JSON: ") + e.what());
  }
}

StatementEntry parse_statement(const json& node, const Bindings& document_bindings,
                               const std::map<std::string, DerivedScale, std::less<>>& derived,
                               const std::string& path) {
  std::string id;
  Bindings bindings;
  std::optional<Statement> st;
  json annotations;
  std::optional<std::string> expect;
  if (!node.is_object()) throw SchemaError(path, "expected an object");
  if (const auto* n = optional_field(node, "id")) id = string(*n, child(path, "id"));
  bindings = document_bindings;
  if (const auto* scales = optional_field(node, "scales")) bindings = parse_scales(*scales, child(path, "scales"));
  const auto& b = bindings;

  const auto form = string(field(node, "form", path), child(path, "form"));
  auto q = [&](const char* key) { return parse_quantity(field(node, key, path), b, derived, child(path, key)); };
  auto g = [&](const char* key) { return parse_group(field(node, key, path), b, derived, child(path, key)); };

  if (form == "order") {
    st = OrderStatement{q("lhs"), q("rhs")};
  } else if (form == "ratio") {
    st = RatioStatement{q("lhs"), parse_factor(node, path), q("rhs")};
  } else if (form == "threshold") {
    bool unit_fixed = false;
    if (const auto* u = optional_field(node, "unit_fixed")) {
      if (!u->is_boolean()) throw SchemaError(child(path, "unit_fixed"), "expected a boolean");
      unit_fixed = u->get<bool>();
    }
    st = ThresholdStatement{q("quantity"), number(field(node, "threshold", path), child(path, "threshold")),
                                     unit_fixed};
  } else if (form == "mean_order") {
    st = MeanOrderStatement{g("group_a"), g("group_b"), parse_mean(node, path)};
  } else if (form == "mean_ratio") {
    st = MeanRatioStatement{g("group_a"), parse_factor(node, path), g("group_b"), parse_mean(node, path)};
  } else if (form == "percent_change") {
    st = PercentChangeStatement{q("now"), parse_factor(node, path), q("then")};
  } else {
    throw SchemaError(child(path, "form"), "unknown form '" + form + "'");
  }

  if (const auto* a = optional_field(node, "annotations")) annotations = *a;
  if (const auto* x = optional_field(node, "expect")) {
    const auto v = string(*x, child(path, "expect"));
    if (v != "meaningful" && v != "meaningless" && v != "undetermined") {
      throw SchemaError(child(path, "expect"), "expected meaningful, meaningless or undetermined");
    }
    expect = v;
  }
  return StatementEntry{std::move(id), std::move(*st), std::move(bindings), std::move(annotations), std::move(expect)};
}

StatementDocument load_statement_document(const json& doc) {
  check_version(doc);
  Bindings bindings;
  if (const auto* s = optional_field(doc, "scales")) bindings = parse_scales(*s, "scales");
  std::map<std::string, DerivedScale, std::less<>> derived;
  if (const auto* d = optional_field(doc, "derived")) derived = parse_derived(*d, "derived");

  std::vector<std::pair<const json*, std::string>> nodes;
  if (const auto* list = optional_field(doc, "statements")) {
    array(*list, "statements");
    for (std::size_t i = 0; i < list->size(); ++i) nodes.emplace_back(&(*list)[i], index("statements", i));
  } else if (const auto* one = optional_field(doc, "statement")) {
    nodes.emplace_back(one, "statement");
  } else {
    throw SchemaError("statements", "missing field");
  }

  StatementDocument out;
  for (const auto& [node, path] : nodes) {
    std::string id = path;
    if (node->is_object() && node->contains("id") && (*node)["id"].is_string()) id = (*node)["id"].get<std::string>();
    try {
      auto entry = parse_statement(*node, bindings, derived, path);
      if (entry.id.empty()) entry.id = id;
      out.entries.push_back(std::move(entry));
    } catch (const SchemaError& e) {
      out.issues.push_back({id, e.path(), e.what()});
    } catch (const Error& e) {
      out.issues.push_back({id, path, e.what()});
    }
  }
  return out;
}

BreakpointTable load_breakpoints(const json& doc) {
  check_version(doc);
  BreakpointTable table(string(field(doc, "name", ""), "name"));
  const auto& list = array(field(doc, "pollutants", ""), "pollutants");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto p = index("pollutants", i);
    PollutantBreakpoints pb;
    pb.pollutant = string(field(list[i], "pollutant", p), child(p, "pollutant"));
    pb.unit = string(field(list[i], "unit", p), child(p, "unit"));
    if (const auto* a = optional_field(list[i], "averaging_period")) pb.averaging_period = string(*a, child(p, "averaging_period"));
    const auto& segs = array(field(list[i], "segments", p), child(p, "segments"));
    for (std::size_t k = 0; k < segs.size(); ++k) {
      const auto sp = index(child(p, "segments"), k);
      if (!segs[k].is_array() || segs[k].size() != 4) throw SchemaError(sp, "expected [conc_lo, conc_hi, aqi_lo, aqi_hi]");
      pb.segments.push_back({number(segs[k][0], sp + "[0]"), number(segs[k][1], sp + "[1]"), number(segs[k][2], sp + "[2]"),
                             number(segs[k][3], sp + "[3]")});
    }
    try {
      table.add(std::move(pb));
    } catch (const ConfigError& e) {
      throw SchemaError(p, e.what());
    }
  }
  return table;
}

json to_json(const BreakpointTable& table) {
  json list = json::array();
  for (const auto& [_, entry] : table.entries()) {
    json segs = json::array();
    for (const auto& s : entry.segments) segs.push_back({s.conc_lo, s.conc_hi, s.aqi_lo, s.aqi_hi});
    list.push_back({{"pollutant", entry.pollutant},
                    {"unit", entry.unit},
                    {"averaging_period", entry.averaging_period},
                    {"segments", std::move(segs)}});
  }
  return {{"format_version", kFormatVersion}, {"name", table.name()}, {"pollutants", std::move(list)}};
}

ToleranceTable load_tolerances(const json& doc) {
  check_version(doc);
  ToleranceTable table(string(field(doc, "name", ""), "name"));
  const auto& t = field(doc, "tolerances", "");
  if (!t.is_object()) throw SchemaError("tolerances", "expected an object of pollutant -> tolerance");
  for (const auto& [name, value] : t.items()) {
    const auto p = child("tolerances", name);
    try {
      table.set(name, number(value, p));
    } catch (const ConfigError& e) {
      throw SchemaError(p, e.what());
    }
  }
  return table;
}

json to_json(const ToleranceTable& table) {
  json t = json::object();
  for (const auto& [name, tau] : table.entries()) t[name] = tau;
  return {{"format_version", kFormatVersion}, {"name", table.name()}, {"tolerances", std::move(t)}};
}

json to_json(const Transform& t) {
  return std::visit(
      [](const auto& f) -> json {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, Transform::Identity>) {
          return {{"kind", "identity"}};
        } else if constexpr (std::is_same_v<F, Affine>) {
          return {{"kind", "affine"}, {"alpha", f.alpha}, {"beta", f.beta}};
        } else {
          json pts = json::array();
          for (const auto& [x, y] : f.points()) pts.push_back({x, y});
          return {{"kind", "monotone"}, {"points", std::move(pts)}};
        }
      },
      t.form());
}

Transform transform_from_json(const json& node, const std::string& path) {
  const auto kind = string(field(node, "kind", path), child(path, "kind"));
  try {
    if (kind == "identity") return Transform::identity();
    if (kind == "affine") {
      return Transform::affine(number(field(node, "alpha", path), child(path, "alpha")),
                               number(field(node, "beta", path), child(path, "beta")));
    }
    if (kind == "monotone") {
      const auto& pts = array(field(node, "points", path), child(path, "points"));
      std::vector<MonotoneMap::Point> points;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto pp = index(child(path, "points"), i);
        if (!pts[i].is_array() || pts[i].size() != 2) throw SchemaError(pp, "expected [x, y]");
        points.emplace_back(number(pts[i][0], pp + "[0]"), number(pts[i][1], pp + "[1]"));
      }
      return Transform::monotone(std::move(points));
    }
  } catch (const DomainError& e) {
    throw SchemaError(path, e.what());
  }
  throw SchemaError(child(path, "kind"), "expected identity, affine or monotone");
}

json to_json(const Witness& w) {
  json out = json::array();
  for (const auto& e : w) out.push_back({{"scale", e.scale_id}, {"transform", to_json(e.transform)}});
  return out;
}

json to_json(const Quantity& q) {
  if (!q.is_derived()) return {{"scale", q.terms().front().scale_id}, {"entity", q.entity()}, {"value", q.components()[0]}};
  json terms = json::array();
  for (const auto& t : q.terms()) terms.push_back({{"scale", t.scale_id}, {"exponent", t.exponent}});
  return {{"form", std::string(to_string(q.derived_scale()->form))},
          {"terms", std::move(terms)},
          {"entity", q.entity()},
          {"values", std::vector<double>(q.components().begin(), q.components().end())}};
}

json to_json(const Statement& s) {
  auto group = [](const std::vector<Quantity>& g) {
    json out = json::array();
    for (const auto& q : g) out.push_back(to_json(q));
    return out;
  };
  json out = std::visit(
      [&](const auto& st) -> json {
        using S = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<S, OrderStatement>) {
          return {{"lhs", to_json(st.lhs)}, {"rhs", to_json(st.rhs)}};
        } else if constexpr (std::is_same_v<S, RatioStatement>) {
          return {{"lhs", to_json(st.lhs)}, {"factor", st.factor}, {"rhs", to_json(st.rhs)}};
        } else if constexpr (std::is_same_v<S, ThresholdStatement>) {
          return {{"quantity", to_json(st.quantity)}, {"threshold", st.threshold}, {"unit_fixed", st.unit_fixed}};
        } else if constexpr (std::is_same_v<S, MeanOrderStatement>) {
          return {{"group_a", group(st.group_a)}, {"group_b", group(st.group_b)}, {"mean", std::string(to_string(st.kind))}};
        } else if constexpr (std::is_same_v<S, MeanRatioStatement>) {
          return {{"group_a", group(st.group_a)},
                  {"factor", st.factor},
                  {"group_b", group(st.group_b)},
                  {"mean", std::string(to_string(st.kind))}};
        } else {
          return {{"now", to_json(st.now)}, {"factor", st.factor}, {"then", to_json(st.then)}};
        }
      },
      s);
  out["form"] = std::string(form_name(s));
  return out;
}

json to_json(const Bindings& b) {
  json out = json::array();
  for (const auto& [id, sb] : b.scales()) {
    out.push_back({{"id", id}, {"type", std::string(to_string(sb.scale_type))}, {"group", sb.independence_group}});
  }
  return out;
}

}  // namespace scalewise::cli
