#include "scalewise/scales.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "internal/draw.hpp"
#include "scalewise/error.hpp"

namespace scalewise {

namespace {

constexpr double kAlphaMin = 1e-3;
constexpr double kAlphaMax = 1e3;
constexpr double kBetaBound = 100.0;
constexpr std::size_t kOrdinalKnots = 8;

bool near(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

// Fits v -> alpha * v + beta through a monotone map's points, if they are collinear.
bool collinear(const MonotoneMap& map, double& alpha, double& beta) {
  const auto& pts = map.points();
  alpha = (pts[1].second - pts[0].second) / (pts[1].first - pts[0].first);
  beta = pts[0].second - alpha * pts[0].first;
  return std::all_of(pts.begin(), pts.end(),
                     [&](const auto& p) { return near(alpha * p.first + beta, p.second); });
}

}  // namespace

std::string_view to_string(ScaleType type) noexcept {
  switch (type) {
    case ScaleType::absolute: return "absolute";
    case ScaleType::ratio: return "ratio";
    case ScaleType::interval: return "interval";
    case ScaleType::ordinal: return "ordinal";
  }
  return "?";
}

ScaleType parse_scale_type(std::string_view name) {
  for (auto t : {ScaleType::absolute, ScaleType::ratio, ScaleType::interval, ScaleType::ordinal}) {
    if (to_string(t) == name) return t;
  }
  throw SchemaError("", "unknown scale type '" + std::string(name) + "'");
}

MonotoneMap::MonotoneMap(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw DomainError("monotone map needs at least two control points");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i].first) || !std::isfinite(points_[i].second)) {
      throw DomainError("monotone map control points must be finite");
    }
    if (i > 0 && !(points_[i - 1].first < points_[i].first && points_[i - 1].second < points_[i].second)) {
      throw DomainError("monotone map control points must be strictly increasing in both coordinates");
    }
  }
}

double MonotoneMap::operator()(double v) const noexcept {
  // Segment whose right end is the first knot >= v, clamped to the outer segments.
  auto it = std::lower_bound(points_.begin(), points_.end(), v,
                             [](const Point& p, double x) { return p.first < x; });
  if (it != points_.end() && it->first == v) return it->second;
  std::size_t hi = static_cast<std::size_t>(std::distance(points_.begin(), it));
  hi = std::clamp<std::size_t>(hi, 1, points_.size() - 1);
  const auto& [x0, y0] = points_[hi - 1];
  const auto& [x1, y1] = points_[hi];
  return y0 + (v - x0) * ((y1 - y0) / (x1 - x0));
}

Transform Transform::affine(double alpha, double beta) {
  if (!std::isfinite(alpha) || !std::isfinite(beta)) throw DomainError("affine parameters must be finite");
  if (!(alpha > 0.0)) throw DomainError("affine transform requires alpha > 0");
  return Transform{Affine{alpha, beta}};
}

Transform Transform::monotone(std::vector<MonotoneMap::Point> points) {
  return Transform{MonotoneMap{std::move(points)}};
}

double Transform::operator()(double v) const noexcept {
  return std::visit(
      [v](const auto& f) -> double {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, Identity>) {
          return v;
        } else if constexpr (std::is_same_v<F, Affine>) {
          return f.alpha * v + f.beta;
        } else {
          return f(v);
        }
      },
      form_);
}

bool is_admissible(const Transform& t, ScaleType type) noexcept {
  double alpha = 1.0;
  double beta = 0.0;
  if (const auto* a = std::get_if<Affine>(&t.form())) {
    alpha = a->alpha;
    beta = a->beta;
  } else if (const auto* m = std::get_if<MonotoneMap>(&t.form())) {
    if (type == ScaleType::ordinal) return true;
    if (!collinear(*m, alpha, beta)) return false;
  }
  switch (type) {
    case ScaleType::absolute: return near(alpha, 1.0) && near(beta, 0.0);
    case ScaleType::ratio: return alpha > 0.0 && near(beta, 0.0);
    case ScaleType::interval:
    case ScaleType::ordinal: return alpha > 0.0;
  }
  return false;
}

Transform sample_transform(ScaleType type, std::uint64_t seed, std::uint64_t trial,
                           std::span<const double> anchors, std::uint64_t stream) {
  detail::Draw draw(seed, trial, stream);
  switch (type) {
    case ScaleType::absolute:
      return Transform::identity();
    case ScaleType::ratio:
      return Transform::proportional(draw.log_uniform(kAlphaMin, kAlphaMax));
    case ScaleType::interval: {
      const double alpha = draw.log_uniform(kAlphaMin, kAlphaMax);
      return Transform::affine(alpha, draw.uniform(-kBetaBound, kBetaBound));
    }
    case ScaleType::ordinal:
      break;
  }

  std::vector<double> distinct(anchors.begin(), anchors.end());
  std::erase_if(distinct, [](double v) { return !std::isfinite(v); });
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  double lo = 0.0;
  double hi = 100.0;
  if (!distinct.empty()) {
    lo = distinct.front();
    hi = distinct.back();
    if (lo == hi) {
      const double pad = std::max(1.0, std::abs(lo));
      lo -= pad;
      hi += pad;
    }
  }

  std::vector<double> knots{lo, hi};
  // Interior anchors in random order (portable Fisher-Yates), then uniform fill.
  std::vector<double> interior;
  for (double v : distinct) {
    if (v > lo && v < hi) interior.push_back(v);
  }
  for (std::size_t i = interior.size(); i > 1; --i) {
    std::swap(interior[i - 1], interior[draw.below(i)]);
  }
  for (double v : interior) {
    if (knots.size() == kOrdinalKnots) break;
    knots.push_back(v);
  }
  for (int attempts = 0; knots.size() < kOrdinalKnots && attempts < 64; ++attempts) {
    const double v = draw.uniform(lo, hi);
    if (v > lo && v < hi && std::find(knots.begin(), knots.end(), v) == knots.end()) knots.push_back(v);
  }
  std::sort(knots.begin(), knots.end());

  std::vector<MonotoneMap::Point> points;
  points.reserve(knots.size());
  double y = draw.uniform(-kBetaBound, kBetaBound);
  points.emplace_back(knots.front(), y);
  for (std::size_t i = 1; i < knots.size(); ++i) {
    y += (knots[i] - knots[i - 1]) * draw.log_uniform(kAlphaMin, kAlphaMax);
    if (!(y > points.back().second)) y = std::nextafter(points.back().second, HUGE_VAL);
    points.emplace_back(knots[i], y);
  }
  return Transform::monotone(std::move(points));
}

Bindings::Bindings(std::initializer_list<ScaleBinding> bindings) {
  for (const auto& b : bindings) add(b);
}

void Bindings::add(ScaleBinding binding) {
  if (binding.scale_id.empty()) throw BindingError("scale id must not be empty");
  if (binding.independence_group.empty()) binding.independence_group = binding.scale_id;
  if (scales_.contains(binding.scale_id)) {
    throw BindingError("duplicate scale '" + binding.scale_id + "'");
  }
  if (auto it = group_types_.find(binding.independence_group); it != group_types_.end()) {
    if (it->second != binding.scale_type) {
      throw BindingError("independence group '" + binding.independence_group + "' mixes " +
                         std::string(to_string(it->second)) + " and " +
                         std::string(to_string(binding.scale_type)) + " scales");
    }
  } else {
    group_types_.emplace(binding.independence_group, binding.scale_type);
  }
  std::string id = binding.scale_id;
  scales_.emplace(std::move(id), std::move(binding));
}

const ScaleBinding& Bindings::at(std::string_view scale_id) const {
  auto it = scales_.find(scale_id);
  if (it == scales_.end()) throw BindingError("unresolved scale '" + std::string(scale_id) + "'");
  return it->second;
}

bool Bindings::contains(std::string_view scale_id) const { return scales_.find(scale_id) != scales_.end(); }

ScaleType Bindings::group_type(std::string_view group) const {
  auto it = group_types_.find(group);
  if (it == group_types_.end()) throw BindingError("unknown independence group '" + std::string(group) + "'");
  return it->second;
}

std::vector<std::string> Bindings::groups() const {
  std::vector<std::string> out;
  out.reserve(group_types_.size());
  for (const auto& [g, _] : group_types_) out.push_back(g);
  return out;
}

DerivedScale DerivedScale::monomial(std::vector<Term> terms) {
  return DerivedScale{Form::monomial, std::move(terms)};
}

DerivedScale DerivedScale::sum(std::vector<std::string> scale_ids) {
  DerivedScale d{Form::sum, {}};
  for (auto& id : scale_ids) d.terms.push_back(Term{std::move(id), 1});
  return d;
}

double DerivedScale::combine(std::span<const double> values) const {
  if (values.size() != terms.size()) {
    throw DomainError("derived scale has " + std::to_string(terms.size()) + " terms but " +
                      std::to_string(values.size()) + " values");
  }
  if (form == Form::sum) {
    double total = 0.0;
    for (double v : values) total += v;
    return total;
  }
  double product = 1.0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (!(values[i] > 0.0)) throw DomainError("monomial scale requires positive base values");
    product *= std::pow(values[i], terms[i].exponent);
  }
  return product;
}

std::string_view to_string(DerivedScale::Form form) noexcept {
  return form == DerivedScale::Form::monomial ? "monomial" : "sum";
}

}  // namespace scalewise
