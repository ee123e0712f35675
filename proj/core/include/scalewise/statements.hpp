#pragma once

// Statements about scaled quantities and verdicts on their meaningfulness.
//
// A statement is meaningful when its truth value survives every admissible
// transformation of the scales it mentions, applied independently per
// independence group. Two engines judge this:
//
//  * classify_symbolic: a rule table over the algebraic behaviour of each
//    quantity (fixed, rescaled by a product of unit factors, affine,
//    monotone). It is the only source of "meaningful".
//  * falsify: a seeded search for admissible transformations that flip the
//    statement's truth. A hit is a replayable witness of meaninglessness; a
//    miss is "undetermined", never "meaningful".

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "scalewise/scales.hpp"
#include "scalewise/stats.hpp"

namespace scalewise {

inline constexpr double kDefaultRelTol = 1e-9;
inline constexpr int kDefaultTrials = 1000;

/// A measured value: either a single base-scale reading f(x), or a derived
/// scale (BMI = W * H^-2) with one reading per base term.
class Quantity {
 public:
  static Quantity base(std::string scale_id, std::string entity, double value);
  /// Throws DomainError if `values` does not carry one entry per term.
  static Quantity derived(DerivedScale scale, std::string entity, std::vector<double> values);

  bool is_derived() const noexcept { return derived_.has_value(); }
  const std::string& entity() const noexcept { return entity_; }
  const std::optional<DerivedScale>& derived_scale() const noexcept { return derived_; }
  /// The base scales read, one per component (a single one for base quantities).
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::span<const double> components() const noexcept { return components_; }

  /// Value as measured. Throws DomainError for invalid monomial bases.
  double value() const;

  bool operator==(const Quantity&) const = default;

 private:
  Quantity() = default;

  std::string entity_;
  std::vector<Term> terms_;
  std::vector<double> components_;
  std::optional<DerivedScale> derived_;
};

enum class MeanKind { arithmetic, geometric, median };

std::string_view to_string(MeanKind kind) noexcept;
/// Throws SchemaError.
MeanKind parse_mean_kind(std::string_view name);

/// lhs > rhs
struct OrderStatement {
  Quantity lhs;
  Quantity rhs;
};

/// lhs = factor * rhs
struct RatioStatement {
  Quantity lhs;
  double factor = 1.0;
  Quantity rhs;
};

/// quantity >= threshold. `unit_fixed` records that the units of the
/// quantity are specified (so no rescaling applies).
struct ThresholdStatement {
  Quantity quantity;
  double threshold = 0.0;
  bool unit_fixed = false;
};

/// mean(group_a) > mean(group_b)
struct MeanOrderStatement {
  std::vector<Quantity> group_a;
  std::vector<Quantity> group_b;
  MeanKind kind = MeanKind::arithmetic;
};

/// mean(group_a) = factor * mean(group_b)
struct MeanRatioStatement {
  std::vector<Quantity> group_a;
  double factor = 1.0;
  std::vector<Quantity> group_b;
  MeanKind kind = MeanKind::arithmetic;
};

/// now = factor * then, e.g. BMI(x, t) = 1.2 * BMI(x, t - 1)
struct PercentChangeStatement {
  Quantity now;
  double factor = 1.0;
  Quantity then;
};

using Statement = std::variant<OrderStatement, RatioStatement, ThresholdStatement, MeanOrderStatement,
                               MeanRatioStatement, PercentChangeStatement>;

std::string_view form_name(const Statement& s) noexcept;
/// Human-readable rendering, e.g. `temp(x) = 2 * temp(y)`.
std::string render(const Statement& s);
std::string render(const Quantity& q);

/// The base scale ids a statement reads, sorted and unique.
std::vector<std::string> scales_of(const Statement& s);

struct WitnessEntry {
  std::string scale_id;
  Transform transform;

  bool operator==(const WitnessEntry&) const = default;
};
using Witness = std::vector<WitnessEntry>;

struct Meaningful {
  std::string rule;
};

struct Meaningless {
  Witness witness;
  bool truth_before = false;
  bool truth_after = false;
  /// Symbolic rule that predicted meaninglessness, if any.
  std::string rule;
};

struct Undetermined {
  int trials = 0;
  /// Set when a symbolic rule predicts meaninglessness but no witness was
  /// found for these particular values.
  std::string note;
};

struct Verdict {
  std::variant<Meaningful, Meaningless, Undetermined> outcome;

  bool meaningful() const noexcept { return std::holds_alternative<Meaningful>(outcome); }
  bool meaningless() const noexcept { return std::holds_alternative<Meaningless>(outcome); }
  bool undetermined() const noexcept { return std::holds_alternative<Undetermined>(outcome); }
  std::string_view label() const noexcept;
};

struct SymbolicRuling {
  bool meaningful = false;
  std::string rule;
};

/// Truth of `s` as measured. Equality forms hold iff
/// |lhs - c * rhs| <= rel_tol * max(|lhs|, |c * rhs|); order forms are strict.
/// Throws BindingError for unresolved scales, DomainError for invalid inputs
/// (geometric mean over non-positive values, empty groups, factor <= 0).
bool evaluate(const Statement& s, const Bindings& bindings, double rel_tol = kDefaultRelTol);

/// Truth of `s` after applying `witness` to the scales it names (others keep
/// the identity). Thresholds with fixed units are not transformed.
bool evaluate_under(const Statement& s, const Bindings& bindings, const Witness& witness,
                    double rel_tol = kDefaultRelTol);

/// Rule-table verdict, or nullopt when no rule applies.
std::optional<SymbolicRuling> classify_symbolic(const Statement& s, const Bindings& bindings);

struct SearchOptions {
  int trials = kDefaultTrials;
  std::uint64_t seed = 0;
  double rel_tol = kDefaultRelTol;
};

/// Randomised invariance search. Each trial draws one transform per
/// independence group from (seed, trial, group position) alone. A flip is
/// accepted only when it is decisive: equality forms must give the same
/// truth at 10x and 0.1x the tolerance both before and after; order forms
/// must separate their two sides by more than the tolerance.
/// Throws DomainError if trials < 1, plus anything `evaluate` throws.
Verdict falsify(const Statement& s, const Bindings& bindings, const SearchOptions& options = {});

struct CheckOptions : SearchOptions {
  /// Also run the falsifier behind a symbolic "meaningful" and throw
  /// InconsistencyError if it finds a witness.
  bool validate = false;
};

class InconsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Symbolic verdict when a "meaningful" rule applies, otherwise the
/// falsifier's verdict annotated with any symbolic "meaningless" rule.
Verdict check(const Statement& s, const Bindings& bindings, const CheckOptions& options = {});

struct BoundStatement {
  Statement statement;
  Bindings bindings;
};

/// mean(readings of subject_a) > mean(readings of subject_b) across all
/// measurers, each measurer on its own ratio scale. `shared_units` puts every
/// measurer in one independence group; otherwise each has its own unit.
BoundStatement measurer_comparison(const MeasurementMatrix& matrix, std::size_t subject_a, std::size_t subject_b,
                                   MeanKind kind, bool shared_units);

}  // namespace scalewise
