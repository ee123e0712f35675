#include "scalewise/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "scalewise/error.hpp"

namespace scalewise {

namespace {

void require_nonempty(std::span<const double> values, const char* what) {
  if (values.empty()) throw DomainError(std::string(what) + " of an empty sample");
}

void require_pairs(const PairedSample& s) {
  if (s.size() < 2) throw DomainError("need at least two paired observations");
}

// Counts inversions of `v` while merge-sorting it.
std::uint64_t count_inversions(std::vector<double>& v, std::vector<double>& scratch, std::size_t lo,
                               std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t n = count_inversions(v, scratch, lo, mid) + count_inversions(v, scratch, mid, hi);
  std::size_t i = lo;
  std::size_t j = mid;
  std::size_t k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      n += mid - i;
      scratch[k++] = v[j++];
    } else {
      scratch[k++] = v[i++];
    }
  }
  while (i < mid) scratch[k++] = v[i++];
  while (j < hi) scratch[k++] = v[j++];
  std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo), scratch.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return n;
}

struct Moments {
  double mean_x = 0.0;
  double mean_y = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
};

Moments centered_moments(const PairedSample& s) {
  Moments m;
  m.mean_x = arithmetic_mean(s.x());
  m.mean_y = arithmetic_mean(s.y());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double dx = s.x()[i] - m.mean_x;
    const double dy = s.y()[i] - m.mean_y;
    m.sxx += dx * dx;
    m.syy += dy * dy;
    m.sxy += dx * dy;
  }
  return m;
}

}  // namespace

double arithmetic_mean(std::span<const double> values) {
  require_nonempty(values, "arithmetic mean");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double geometric_mean(std::span<const double> values) {
  require_nonempty(values, "geometric mean");
  double log_sum = 0.0;
  for (double v : values) {
    if (!(v > 0.0)) throw DomainError("geometric mean requires positive values");
    log_sum += std::log(v);
  }
  return std::exp(log_sum / static_cast<double>(values.size()));
}

double median(std::span<const double> values) {
  require_nonempty(values, "median");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  if (n % 2 == 1) return sorted[n / 2];
  return (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
}

PairedSample::PairedSample(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size()) throw DomainError("paired sample coordinates differ in length");
}

PairedSample PairedSample::from_pairs(std::span<const std::pair<double, double>> points) {
  std::vector<double> x;
  std::vector<double> y;
  x.reserve(points.size());
  y.reserve(points.size());
  for (const auto& [a, b] : points) {
    x.push_back(a);
    y.push_back(b);
  }
  return PairedSample(std::move(x), std::move(y));
}

std::vector<double> ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> out(values.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    if (r > 0 && values[order[r]] == values[order[r - 1]]) {
      throw TieError("tied values are not ranked (value " + std::to_string(values[order[r]]) + ")");
    }
    out[order[r]] = static_cast<double>(r + 1);
  }
  return out;
}

double kendall_tau(const PairedSample& s) {
  require_pairs(s);
  // Ranking both coordinates rejects ties on either side.
  const auto rx = ranks(s.x());
  const auto ry = ranks(s.y());
  std::vector<double> y_by_x(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) y_by_x[static_cast<std::size_t>(rx[i]) - 1] = ry[i];
  std::vector<double> scratch(y_by_x.size());
  const auto discordant = count_inversions(y_by_x, scratch, 0, y_by_x.size());
  const auto n = static_cast<std::uint64_t>(s.size());
  const auto pairs = n * (n - 1) / 2;
  const auto concordant = pairs - discordant;
  return (static_cast<double>(concordant) - static_cast<double>(discordant)) / static_cast<double>(pairs);
}

double spearman_rho(const PairedSample& s) {
  require_pairs(s);
  const auto rx = ranks(s.x());
  const auto ry = ranks(s.y());
  double d2 = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double d = rx[i] - ry[i];
    d2 += d * d;
  }
  const auto n = static_cast<double>(s.size());
  return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
}

double pearson_r(const PairedSample& s) {
  require_pairs(s);
  const auto m = centered_moments(s);
  if (m.sxx == 0.0 || m.syy == 0.0) throw DegenerateError("Pearson r undefined: zero variance");
  return std::clamp(m.sxy / std::sqrt(m.sxx * m.syy), -1.0, 1.0);
}

RegressionLine linear_regression(const PairedSample& s) {
  require_pairs(s);
  const auto m = centered_moments(s);
  if (m.sxx == 0.0) throw DegenerateError("regression undefined: x has zero variance");
  RegressionLine line;
  line.slope = m.sxy / m.sxx;
  line.intercept = m.mean_y - line.slope * m.mean_x;
  if (m.syy > 0.0) {
    const double r = std::clamp(m.sxy / std::sqrt(m.sxx * m.syy), -1.0, 1.0);
    line.r_squared = r * r;
  }
  return line;
}

double sensitivity(const ConfusionCounts& c) {
  if (c.tp + c.fn == 0) throw DomainError("sensitivity undefined: no positives");
  return static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
}

double specificity(const ConfusionCounts& c) {
  if (c.tn + c.fp == 0) throw DomainError("specificity undefined: no negatives");
  return static_cast<double>(c.tn) / static_cast<double>(c.tn + c.fp);
}

MeasurementMatrix::MeasurementMatrix(std::vector<std::vector<double>> rows) : rows_(std::move(rows)) {
  if (rows_.empty() || rows_.front().empty()) throw DomainError("measurement matrix is empty");
  for (const auto& row : rows_) {
    if (row.size() != rows_.front().size()) throw DomainError("measurement matrix rows differ in length");
    for (double v : row) {
      if (!(v > 0.0)) throw DomainError("measurement matrix entries must be positive");
    }
  }
}

std::vector<double> MeasurementMatrix::subject_readings(std::size_t subject) const {
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& row : rows_) out.push_back(row.at(subject));
  return out;
}

MeasurementMatrix MeasurementMatrix::rescaled(std::span<const double> factors) const {
  if (factors.size() != rows_.size()) throw DomainError("one rescaling factor per measurer required");
  auto rows = rows_;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!(factors[i] > 0.0)) throw DomainError("rescaling factors must be positive");
    for (double& v : rows[i]) v *= factors[i];
  }
  return MeasurementMatrix(std::move(rows));
}

std::vector<double> MeasurementMatrix::arithmetic_means() const {
  std::vector<double> out;
  for (std::size_t j = 0; j < subjects(); ++j) out.push_back(arithmetic_mean(subject_readings(j)));
  return out;
}

std::vector<double> MeasurementMatrix::geometric_means() const {
  std::vector<double> out;
  for (std::size_t j = 0; j < subjects(); ++j) out.push_back(geometric_mean(subject_readings(j)));
  return out;
}

std::span<const DisciplineThreshold> discipline_thresholds() noexcept {
  static constexpr std::array<DisciplineThreshold, 4> kThresholds{{
      {"physics", 0.95, 0.9},
      {"chemistry", 0.9, 0.8},
      {"biology", 0.7, 0.5},
      {"social sciences", 0.6, 0.35},
  }};
  return kThresholds;
}

}  // namespace scalewise
