#pragma once

// Scale types, their admissible transformation families, and scales derived
// from base scales (monomials such as W * H^-2, and plain sums).

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace scalewise {

enum class ScaleType { absolute, ratio, interval, ordinal };

std::string_view to_string(ScaleType type) noexcept;
/// Accepts the lowercase names produced by `to_string`. Throws SchemaError.
ScaleType parse_scale_type(std::string_view name);

/// v -> alpha * v + beta, alpha > 0.
struct Affine {
  double alpha = 1.0;
  double beta = 0.0;

  bool operator==(const Affine&) const = default;
};

/// Strictly increasing piecewise-linear map through control points, extended
/// linearly past both ends with the slope of the outermost segment.
class MonotoneMap {
 public:
  using Point = std::pair<double, double>;

  /// Throws DomainError unless there are >= 2 points, strictly increasing in
  /// both coordinates.
  explicit MonotoneMap(std::vector<Point> points);

  double operator()(double v) const noexcept;
  const std::vector<Point>& points() const noexcept { return points_; }

  bool operator==(const MonotoneMap&) const = default;

 private:
  std::vector<Point> points_;
};

class Transform {
 public:
  struct Identity {
    bool operator==(const Identity&) const = default;
  };
  using Form = std::variant<Identity, Affine, MonotoneMap>;

  Transform() = default;

  static Transform identity() { return Transform{}; }
  /// Throws DomainError if alpha <= 0 or either argument is not finite.
  static Transform affine(double alpha, double beta);
  static Transform proportional(double alpha) { return affine(alpha, 0.0); }
  static Transform monotone(std::vector<MonotoneMap::Point> points);

  double operator()(double v) const noexcept;
  const Form& form() const noexcept { return form_; }

  bool operator==(const Transform&) const = default;

 private:
  explicit Transform(Form form) : form_(std::move(form)) {}

  Form form_{Identity{}};
};

inline double apply(const Transform& t, double v) noexcept { return t(v); }

/// True iff `t` belongs to the admissible family of `type`. Monotone maps
/// that happen to be (proportional) lines are recognised as such.
bool is_admissible(const Transform& t, ScaleType type) noexcept;

/// Deterministic draw from the admissible family of `type`.
///
/// - absolute: identity
/// - ratio: alpha log-uniform on [1e-3, 1e3]
/// - interval: same alpha, beta uniform on [-100, 100]
/// - ordinal: piecewise-linear map through 8 control points with segment
///   slopes log-uniform on [1e-3, 1e3]
///
/// `anchors` are the values the transform will be applied to. Ordinal maps
/// place control points on (a subset of) them, filling the rest uniformly
/// over their range, so that every gap between data values gets its own
/// random slope. Without anchors the knots span [0, 100].
///
/// `stream` separates independent draws within a single trial (one stream per
/// independence group).
Transform sample_transform(ScaleType type, std::uint64_t seed, std::uint64_t trial,
                           std::span<const double> anchors = {}, std::uint64_t stream = 0);

/// One scale in a statement's vocabulary. Scales sharing an
/// `independence_group` always receive the same transformation; distinct
/// groups transform independently.
struct ScaleBinding {
  std::string scale_id;
  ScaleType scale_type = ScaleType::ratio;
  std::string independence_group;  // empty: defaults to scale_id
};

class Bindings {
 public:
  Bindings() = default;
  Bindings(std::initializer_list<ScaleBinding> bindings);

  /// Throws BindingError on a duplicate id or when the group already holds a
  /// scale of a different type.
  void add(ScaleBinding binding);

  /// Throws BindingError if `scale_id` is unknown.
  const ScaleBinding& at(std::string_view scale_id) const;
  bool contains(std::string_view scale_id) const;

  const std::string& group_of(std::string_view scale_id) const { return at(scale_id).independence_group; }
  /// Throws BindingError if no scale belongs to `group`.
  ScaleType group_type(std::string_view group) const;

  /// Group names in lexicographic order.
  std::vector<std::string> groups() const;
  const std::map<std::string, ScaleBinding, std::less<>>& scales() const noexcept { return scales_; }

 private:
  std::map<std::string, ScaleBinding, std::less<>> scales_;
  std::map<std::string, ScaleType, std::less<>> group_types_;
};

struct Term {
  std::string scale_id;
  int exponent = 1;

  bool operator==(const Term&) const = default;
};

/// A scale computed from base scales: a monomial prod v_i^e_i, or a sum.
struct DerivedScale {
  enum class Form { monomial, sum };

  Form form = Form::monomial;
  std::vector<Term> terms;

  static DerivedScale monomial(std::vector<Term> terms);
  static DerivedScale sum(std::vector<std::string> scale_ids);

  /// Combines one value per term. Throws DomainError on a size mismatch or a
  /// non-positive base under a monomial.
  double combine(std::span<const double> values) const;

  bool operator==(const DerivedScale&) const = default;
};

std::string_view to_string(DerivedScale::Form form) noexcept;

}  // namespace scalewise
