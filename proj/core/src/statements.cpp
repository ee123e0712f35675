#include "scalewise/statements.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "scalewise/error.hpp"
#include "scalewise/format.hpp"
#include "scalewise/stats.hpp"

namespace scalewise {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

// Transform to apply to a base scale, or nullptr for the identity.
using Lookup = std::function<const Transform*(const std::string& scale_id)>;

const Transform* no_transform(const std::string&) { return nullptr; }

double measure(const Quantity& q, const Bindings& bindings, const Lookup& lookup) {
  std::vector<double> values(q.components().begin(), q.components().end());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto& id = q.terms()[i].scale_id;
    bindings.at(id);
    if (const Transform* t = lookup(id)) values[i] = (*t)(values[i]);
  }
  if (!q.is_derived()) return values.front();
  return q.derived_scale()->combine(values);
}

double mean_of(const std::vector<Quantity>& group, MeanKind kind, const Bindings& bindings, const Lookup& lookup) {
  if (group.empty()) throw DomainError("mean over an empty group");
  std::vector<double> values;
  values.reserve(group.size());
  for (const auto& q : group) values.push_back(measure(q, bindings, lookup));
  switch (kind) {
    case MeanKind::arithmetic: return arithmetic_mean(values);
    case MeanKind::geometric: return geometric_mean(values);
    case MeanKind::median: return median(values);
  }
  return 0.0;
}

void require_factor(double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) throw DomainError("proportionality factor must be positive");
}

// Both sides of a statement reduced to one comparison.
struct Sides {
  enum class Relation { greater, at_least, proportional };
  Relation relation = Relation::greater;
  double lhs = 0.0;
  double rhs = 0.0;  // already multiplied by the factor for `proportional`

  bool truth(double rel_tol) const {
    switch (relation) {
      case Relation::greater: return lhs > rhs;
      case Relation::at_least: return lhs >= rhs;
      case Relation::proportional:
        return std::abs(lhs - rhs) <= rel_tol * std::max(std::abs(lhs), std::abs(rhs));
    }
    return false;
  }

  bool stable(double rel_tol) const {
    if (relation == Relation::proportional) return truth(10.0 * rel_tol) == truth(0.1 * rel_tol);
    return std::abs(lhs - rhs) > rel_tol * std::max(std::abs(lhs), std::abs(rhs));
  }
};

Sides sides_of(const Statement& s, const Bindings& bindings, const Lookup& lookup) {
  using R = Sides::Relation;
  return std::visit(
      Overloaded{
          [&](const OrderStatement& st) {
            return Sides{R::greater, measure(st.lhs, bindings, lookup), measure(st.rhs, bindings, lookup)};
          },
          [&](const RatioStatement& st) {
            require_factor(st.factor);
            return Sides{R::proportional, measure(st.lhs, bindings, lookup),
                         st.factor * measure(st.rhs, bindings, lookup)};
          },
          [&](const ThresholdStatement& st) {
            const Lookup fixed = no_transform;
            return Sides{R::at_least, measure(st.quantity, bindings, st.unit_fixed ? fixed : lookup), st.threshold};
          },
          [&](const MeanOrderStatement& st) {
            return Sides{R::greater, mean_of(st.group_a, st.kind, bindings, lookup),
                         mean_of(st.group_b, st.kind, bindings, lookup)};
          },
          [&](const MeanRatioStatement& st) {
            require_factor(st.factor);
            return Sides{R::proportional, mean_of(st.group_a, st.kind, bindings, lookup),
                         st.factor * mean_of(st.group_b, st.kind, bindings, lookup)};
          },
          [&](const PercentChangeStatement& st) {
            require_factor(st.factor);
            return Sides{R::proportional, measure(st.now, bindings, lookup),
                         st.factor * measure(st.then, bindings, lookup)};
          },
      },
      s);
}

template <class F>
void for_each_quantity(const Statement& s, F&& f) {
  std::visit(Overloaded{
                 [&](const OrderStatement& st) { f(st.lhs); f(st.rhs); },
                 [&](const RatioStatement& st) { f(st.lhs); f(st.rhs); },
                 [&](const ThresholdStatement& st) { f(st.quantity); },
                 [&](const MeanOrderStatement& st) {
                   for (const auto& q : st.group_a) f(q);
                   for (const auto& q : st.group_b) f(q);
                 },
                 [&](const MeanRatioStatement& st) {
                   for (const auto& q : st.group_a) f(q);
                   for (const auto& q : st.group_b) f(q);
                 },
                 [&](const PercentChangeStatement& st) { f(st.now); f(st.then); },
             },
             s);
}

// ---------------------------------------------------------------------------
// Symbolic classification

// How a quantity responds to admissible transformations of its base scales.
struct Behavior {
  enum class Kind {
    fixed,            // no admissible change (absolute bases, or units fixed)
    scaled,           // multiplied by prod alpha_g^e_g over ratio groups
    affine,           // alpha v + beta in one interval group
    monotone,         // strictly increasing map of one ordinal group
    independent_sum,  // sum over ratio bases in two or more groups
    other,
  };
  Kind kind = Kind::other;
  std::map<std::string, int> exponents;  // scaled: group -> net exponent
  std::string group;                     // affine / monotone

  bool operator==(const Behavior&) const = default;
};

Behavior behavior_of(const Quantity& q, const Bindings& bindings) {
  using K = Behavior::Kind;
  Behavior b;
  const auto& terms = q.terms();
  const bool single = terms.size() == 1 && terms.front().exponent == 1;

  if (!q.is_derived() || (single && q.derived_scale()->form == DerivedScale::Form::monomial) ||
      (terms.size() == 1 && q.derived_scale()->form == DerivedScale::Form::sum)) {
    const auto& binding = bindings.at(terms.front().scale_id);
    switch (binding.scale_type) {
      case ScaleType::absolute: b.kind = K::fixed; break;
      case ScaleType::ratio:
        b.kind = K::scaled;
        b.exponents[binding.independence_group] = 1;
        break;
      case ScaleType::interval:
        b.kind = K::affine;
        b.group = binding.independence_group;
        break;
      case ScaleType::ordinal:
        b.kind = K::monotone;
        b.group = binding.independence_group;
        break;
    }
    return b;
  }

  if (q.derived_scale()->form == DerivedScale::Form::monomial) {
    b.kind = K::scaled;
    for (const auto& t : terms) {
      const auto& binding = bindings.at(t.scale_id);
      if (binding.scale_type == ScaleType::absolute) continue;
      if (binding.scale_type != ScaleType::ratio) return Behavior{K::other, {}, {}};
      b.exponents[binding.independence_group] += t.exponent;
    }
  } else {
    std::set<std::string> groups;
    bool all_ratio_or_absolute = true;
    bool any_absolute = false;
    for (const auto& t : terms) {
      const auto& binding = bindings.at(t.scale_id);
      if (binding.scale_type == ScaleType::absolute) {
        any_absolute = true;
      } else if (binding.scale_type == ScaleType::ratio) {
        groups.insert(binding.independence_group);
      } else {
        all_ratio_or_absolute = false;
      }
    }
    if (!all_ratio_or_absolute) return Behavior{K::other, {}, {}};
    if (groups.empty()) return Behavior{K::fixed, {}, {}};
    if (groups.size() >= 2) return Behavior{K::independent_sum, {}, {}};
    if (any_absolute) return Behavior{K::other, {}, {}};
    b.kind = K::scaled;
    b.exponents[*groups.begin()] = 1;
  }
  std::erase_if(b.exponents, [](const auto& kv) { return kv.second == 0; });
  if (b.exponents.empty()) b.kind = K::fixed;
  return b;
}

std::vector<Behavior> behaviors_of(const std::vector<Quantity>& group, const Bindings& bindings) {
  std::vector<Behavior> out;
  out.reserve(group.size());
  for (const auto& q : group) out.push_back(behavior_of(q, bindings));
  return out;
}

bool all_kind(const std::vector<Behavior>& bs, Behavior::Kind kind) {
  return std::all_of(bs.begin(), bs.end(), [&](const Behavior& b) { return b.kind == kind; });
}

bool all_equal(const std::vector<Behavior>& bs) {
  return std::all_of(bs.begin(), bs.end(), [&](const Behavior& b) { return b == bs.front(); });
}

bool any_kind(const std::vector<Behavior>& bs, Behavior::Kind kind) {
  return std::any_of(bs.begin(), bs.end(), [&](const Behavior& b) { return b.kind == kind; });
}

// Per-side average exponent vector, exact as (numerator per group, count).
// Geometric means rescale by prod alpha_g^(sum e_g / n).
bool geometric_factors_match(const std::vector<Behavior>& a, const std::vector<Behavior>& b) {
  for (const auto* side : {&a, &b}) {
    for (const auto& x : *side) {
      if (x.kind != Behavior::Kind::scaled && x.kind != Behavior::Kind::fixed) return false;
    }
  }
  std::map<std::string, long long> sum_a;
  std::map<std::string, long long> sum_b;
  for (const auto& x : a) for (const auto& [g, e] : x.exponents) sum_a[g] += e;
  for (const auto& x : b) for (const auto& [g, e] : x.exponents) sum_b[g] += e;
  const auto na = static_cast<long long>(a.size());
  const auto nb = static_cast<long long>(b.size());
  std::set<std::string> groups;
  for (const auto& [g, _] : sum_a) groups.insert(g);
  for (const auto& [g, _] : sum_b) groups.insert(g);
  return std::all_of(groups.begin(), groups.end(), [&](const std::string& g) { return sum_a[g] * nb == sum_b[g] * na; });
}

std::optional<SymbolicRuling> yes(std::string rule) { return SymbolicRuling{true, std::move(rule)}; }
std::optional<SymbolicRuling> no(std::string rule) { return SymbolicRuling{false, std::move(rule)}; }

std::optional<SymbolicRuling> classify_pair(const Behavior& l, const Behavior& r, bool order) {
  using K = Behavior::Kind;
  if (l.kind == K::fixed && r.kind == K::fixed) return yes("absolute-scale");
  if (l.kind == K::independent_sum || r.kind == K::independent_sum) {
    return no("sum-of-independent-units");
  }
  if (l.kind == K::scaled && r.kind == K::scaled && l.exponents == r.exponents) {
    if (order) return yes("order-preserved-by-rescaling");
    return l.exponents.size() == 1 && l.exponents.begin()->second == 1 ? yes("ratio-scale-proportion")
                                                                        : yes("monomial-homogeneity");
  }
  if (l.kind == K::affine && r.kind == K::affine && l.group == r.group) {
    return order ? yes("order-preserved-by-affine") : no("interval-scale-proportion");
  }
  if (l.kind == K::monotone && r.kind == K::monotone && l.group == r.group) {
    return order ? yes("order-preserved-by-monotone") : no("ordinal-scale-proportion");
  }
  return std::nullopt;
}

std::optional<SymbolicRuling> classify_means(const std::vector<Quantity>& ga, const std::vector<Quantity>& gb,
                                             MeanKind kind, bool order, const Bindings& bindings) {
  using K = Behavior::Kind;
  const auto a = behaviors_of(ga, bindings);
  const auto b = behaviors_of(gb, bindings);
  if (a.empty() || b.empty()) return std::nullopt;
  std::vector<Behavior> all = a;
  all.insert(all.end(), b.begin(), b.end());

  if (all_kind(all, K::fixed)) return yes("absolute-scale");
  if (any_kind(all, K::independent_sum) || any_kind(all, K::other)) return std::nullopt;

  const bool shared = all_equal(all);
  switch (kind) {
    case MeanKind::arithmetic:
      if (all_kind(all, K::scaled)) {
        if (shared) return yes(order ? "arithmetic-mean-order-shared-unit" : "arithmetic-mean-proportion-shared-unit");
        return no("arithmetic-mean-independent-units");
      }
      if (shared && all_kind(all, K::affine)) {
        return order ? yes("arithmetic-mean-order-interval") : no("arithmetic-mean-proportion-interval");
      }
      if (shared && all_kind(all, K::monotone)) return no("arithmetic-mean-ordinal");
      return std::nullopt;

    case MeanKind::geometric:
      if (geometric_factors_match(a, b)) {
        return yes(order ? "geometric-mean-order-independent-units" : "geometric-mean-proportion-independent-units");
      }
      return std::nullopt;

    case MeanKind::median:
      if (shared && all_kind(all, K::scaled)) return yes(order ? "median-order-shared-unit" : "median-proportion-shared-unit");
      if (shared && all_kind(all, K::affine)) {
        return order ? yes("median-order-interval") : no("median-proportion-interval");
      }
      if (shared && all_kind(all, K::monotone)) {
        if (!order) return no("median-proportion-ordinal");
        // An even-sized median averages two middle values, which a monotone
        // map does not commute with.
        if (ga.size() % 2 == 1 && gb.size() % 2 == 1) return yes("median-order-ordinal");
      }
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------------

Quantity Quantity::base(std::string scale_id, std::string entity, double value) {
  Quantity q;
  q.entity_ = std::move(entity);
  q.terms_.push_back(Term{std::move(scale_id), 1});
  q.components_.push_back(value);
  return q;
}

Quantity Quantity::derived(DerivedScale scale, std::string entity, std::vector<double> values) {
  if (scale.terms.empty()) throw DomainError("derived scale has no terms");
  if (values.size() != scale.terms.size()) {
    throw DomainError("derived quantity needs one value per base scale");
  }
  Quantity q;
  q.entity_ = std::move(entity);
  q.terms_ = scale.terms;
  q.components_ = std::move(values);
  q.derived_ = std::move(scale);
  return q;
}

double Quantity::value() const {
  if (!derived_) return components_.front();
  return derived_->combine(components_);
}

std::string_view to_string(MeanKind kind) noexcept {
  switch (kind) {
    case MeanKind::arithmetic: return "arithmetic";
    case MeanKind::geometric: return "geometric";
    case MeanKind::median: return "median";
  }
  return "?";
}

MeanKind parse_mean_kind(std::string_view name) {
  for (auto k : {MeanKind::arithmetic, MeanKind::geometric, MeanKind::median}) {
    if (to_string(k) == name) return k;
  }
  throw SchemaError("", "unknown mean kind '" + std::string(name) + "'");
}

std::string_view form_name(const Statement& s) noexcept {
  static constexpr std::string_view kNames[] = {"order", "ratio", "threshold", "mean_order", "mean_ratio", "percent_change"};
  return kNames[s.index()];
}

std::string render(const Quantity& q) {
  std::string name;
  if (!q.is_derived()) {
    name = q.terms().front().scale_id;
  } else {
    const bool sum = q.derived_scale()->form == DerivedScale::Form::sum;
    name = "[";
    for (std::size_t i = 0; i < q.terms().size(); ++i) {
      const auto& t = q.terms()[i];
      if (i > 0) name += sum ? "+" : "*";
      name += t.scale_id;
      if (!sum && t.exponent != 1) name += "^" + std::to_string(t.exponent);
    }
    name += "]";
  }
  return name + "(" + q.entity() + ")";
}

std::string render(const Statement& s) {
  auto group = [](const std::vector<Quantity>& g, MeanKind kind) {
    std::string out = kind == MeanKind::median ? std::string("median(") : std::string(to_string(kind)) + "_mean(";
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (i > 0) out += ", ";
      out += render(g[i]);
    }
    return out + ")";
  };
  return std::visit(
      Overloaded{
          [](const OrderStatement& st) { return render(st.lhs) + " > " + render(st.rhs); },
          [](const RatioStatement& st) {
            return render(st.lhs) + " = " + format_number(st.factor) + " * " + render(st.rhs);
          },
          [](const ThresholdStatement& st) {
            return render(st.quantity) + " >= " + format_number(st.threshold) +
                   (st.unit_fixed ? " (units fixed)" : " (units unspecified)");
          },
          [&](const MeanOrderStatement& st) { return group(st.group_a, st.kind) + " > " + group(st.group_b, st.kind); },
          [&](const MeanRatioStatement& st) {
            return group(st.group_a, st.kind) + " = " + format_number(st.factor) + " * " + group(st.group_b, st.kind);
          },
          [](const PercentChangeStatement& st) {
            return render(st.now) + " = " + format_number(st.factor) + " * " + render(st.then);
          },
      },
      s);
}

std::vector<std::string> scales_of(const Statement& s) {
  std::set<std::string> ids;
  for_each_quantity(s, [&](const Quantity& q) {
    for (const auto& t : q.terms()) ids.insert(t.scale_id);
  });
  return {ids.begin(), ids.end()};
}

std::string_view Verdict::label() const noexcept {
  if (meaningful()) return "meaningful";
  if (meaningless()) return "meaningless";
  return "undetermined";
}

bool evaluate(const Statement& s, const Bindings& bindings, double rel_tol) {
  if (!(rel_tol > 0.0)) throw DomainError("rel_tol must be positive");
  return sides_of(s, bindings, no_transform).truth(rel_tol);
}

bool evaluate_under(const Statement& s, const Bindings& bindings, const Witness& witness, double rel_tol) {
  if (!(rel_tol > 0.0)) throw DomainError("rel_tol must be positive");
  const Lookup lookup = [&](const std::string& id) -> const Transform* {
    for (const auto& w : witness) {
      if (w.scale_id == id) return &w.transform;
    }
    return nullptr;
  };
  return sides_of(s, bindings, lookup).truth(rel_tol);
}

std::optional<SymbolicRuling> classify_symbolic(const Statement& s, const Bindings& bindings) {
  return std::visit(
      Overloaded{
          [&](const OrderStatement& st) {
            return classify_pair(behavior_of(st.lhs, bindings), behavior_of(st.rhs, bindings), true);
          },
          [&](const RatioStatement& st) {
            return classify_pair(behavior_of(st.lhs, bindings), behavior_of(st.rhs, bindings), false);
          },
          [&](const PercentChangeStatement& st) {
            return classify_pair(behavior_of(st.now, bindings), behavior_of(st.then, bindings), false);
          },
          [&](const ThresholdStatement& st) -> std::optional<SymbolicRuling> {
            if (st.unit_fixed) return yes("threshold-with-fixed-units");
            if (behavior_of(st.quantity, bindings).kind == Behavior::Kind::fixed) return yes("absolute-scale");
            return no("threshold-without-units");
          },
          [&](const MeanOrderStatement& st) { return classify_means(st.group_a, st.group_b, st.kind, true, bindings); },
          [&](const MeanRatioStatement& st) { return classify_means(st.group_a, st.group_b, st.kind, false, bindings); },
      },
      s);
}

Verdict falsify(const Statement& s, const Bindings& bindings, const SearchOptions& options) {
  if (options.trials < 1) throw DomainError("falsifier needs at least one trial");
  if (!(options.rel_tol > 0.0)) throw DomainError("rel_tol must be positive");

  const Sides before = sides_of(s, bindings, no_transform);
  const bool truth_before = before.truth(options.rel_tol);
  const bool before_stable = before.relation != Sides::Relation::proportional || before.stable(options.rel_tol);

  const auto* threshold = std::get_if<ThresholdStatement>(&s);
  if (threshold && threshold->unit_fixed) return Verdict{Undetermined{options.trials, {}}};

  // Groups touched by the statement, with the values each will transform.
  std::map<std::string, std::vector<double>> anchors;
  for_each_quantity(s, [&](const Quantity& q) {
    for (std::size_t i = 0; i < q.terms().size(); ++i) {
      anchors[bindings.group_of(q.terms()[i].scale_id)].push_back(q.components()[i]);
    }
  });
  const auto scale_ids = scales_of(s);

  std::map<std::string, Transform> assignment;
  const Lookup lookup = [&](const std::string& id) -> const Transform* {
    return &assignment.at(bindings.group_of(id));
  };

  for (int trial = 0; trial < options.trials && before_stable; ++trial) {
    std::uint64_t stream = 0;
    bool all_identity = true;
    for (const auto& [group, values] : anchors) {
      auto t = sample_transform(bindings.group_type(group), options.seed, static_cast<std::uint64_t>(trial), values,
                                stream++);
      all_identity = all_identity && std::holds_alternative<Transform::Identity>(t.form());
      assignment.insert_or_assign(group, std::move(t));
    }
    if (all_identity) break;

    Sides after;
    try {
      after = sides_of(s, bindings, lookup);
    } catch (const DomainError&) {
      continue;  // transformed values left the statement's domain
    }
    if (!std::isfinite(after.lhs) || !std::isfinite(after.rhs)) continue;
    const bool truth_after = after.truth(options.rel_tol);
    if (truth_after == truth_before || !after.stable(options.rel_tol)) continue;

    Meaningless m;
    m.truth_before = truth_before;
    m.truth_after = truth_after;
    for (const auto& id : scale_ids) m.witness.push_back(WitnessEntry{id, assignment.at(bindings.group_of(id))});
    return Verdict{std::move(m)};
  }
  return Verdict{Undetermined{options.trials, {}}};
}

Verdict check(const Statement& s, const Bindings& bindings, const CheckOptions& options) {
  evaluate(s, bindings, options.rel_tol);  // surfaces binding and domain errors first
  const auto ruling = classify_symbolic(s, bindings);
  if (ruling && ruling->meaningful) {
    if (options.validate) {
      if (auto f = falsify(s, bindings, options); f.meaningless()) {
        throw InconsistencyError("rule '" + ruling->rule + "' claims meaningful but a witness flips " + render(s));
      }
    }
    return Verdict{Meaningful{ruling->rule}};
  }

  Verdict v = falsify(s, bindings, options);
  if (ruling) {
    if (auto* m = std::get_if<Meaningless>(&v.outcome)) {
      m->rule = ruling->rule;
    } else if (auto* u = std::get_if<Undetermined>(&v.outcome)) {
      u->note = "rule '" + ruling->rule + "' predicts meaningless, but no witness exists among " +
                std::to_string(options.trials) + " trials for these values";
    }
  }
  return v;
}

BoundStatement measurer_comparison(const MeasurementMatrix& matrix, std::size_t subject_a, std::size_t subject_b,
                                   MeanKind kind, bool shared_units) {
  if (subject_a >= matrix.subjects() || subject_b >= matrix.subjects()) throw DomainError("subject index out of range");
  Bindings bindings;
  MeanOrderStatement st;
  st.kind = kind;
  for (std::size_t i = 0; i < matrix.measurers(); ++i) {
    const std::string id = "measurer" + std::to_string(i + 1);
    bindings.add(ScaleBinding{id, ScaleType::ratio, shared_units ? "measurers" : id});
    st.group_a.push_back(Quantity::base(id, "subject" + std::to_string(subject_a + 1), matrix.at(i, subject_a)));
    st.group_b.push_back(Quantity::base(id, "subject" + std::to_string(subject_b + 1), matrix.at(i, subject_b)));
  }
  return BoundStatement{std::move(st), std::move(bindings)};
}

}  // namespace scalewise
