#pragma once

// Means, rank and product-moment correlation, least-squares regression and
// screening-test accuracy.

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace scalewise {

/// Throws DomainError on empty input.
double arithmetic_mean(std::span<const double> values);
/// Throws DomainError on empty input or any value <= 0.
double geometric_mean(std::span<const double> values);
/// Average of the two middle elements for even sizes. Throws DomainError on empty input.
double median(std::span<const double> values);

/// Paired observations (x_i, y_i).
class PairedSample {
 public:
  PairedSample() = default;
  /// Throws DomainError if the coordinate vectors differ in length.
  PairedSample(std::vector<double> x, std::vector<double> y);
  static PairedSample from_pairs(std::span<const std::pair<double, double>> points);

  std::size_t size() const noexcept { return x_.size(); }
  std::span<const double> x() const noexcept { return x_; }
  std::span<const double> y() const noexcept { return y_; }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
};

/// 1-based ranks. Throws TieError if any two values are equal.
std::vector<double> ranks(std::span<const double> values);

/// (C - D) / (C + D) over concordant/discordant pairs, counted in
/// O(n log n) by merge-sort inversion counting. Ties are rejected
/// (TieError); n < 2 throws DomainError.
double kendall_tau(const PairedSample& sample);

/// 1 - 6 * sum(d_i^2) / (n (n^2 - 1)) on rank differences. Same errors as kendall_tau.
double spearman_rho(const PairedSample& sample);

/// Product-moment correlation. Throws DegenerateError if either coordinate
/// has zero variance, DomainError if n < 2.
double pearson_r(const PairedSample& sample);

struct RegressionLine {
  double slope = 0.0;
  double intercept = 0.0;
  /// Square of Pearson r; 0 when y is constant.
  double r_squared = 0.0;

  double operator()(double x) const noexcept { return slope * x + intercept; }
};

/// Ordinary least squares y = slope * x + intercept. Throws DegenerateError
/// when x has zero variance, DomainError if n < 2.
RegressionLine linear_regression(const PairedSample& sample);

struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;
};

/// tp / (tp + fn). Throws DomainError when there are no positives.
double sensitivity(const ConfusionCounts& c);
/// tn / (tn + fp). Throws DomainError when there are no negatives.
double specificity(const ConfusionCounts& c);

/// Measurer x subject grid of strictly positive readings, e.g. skinfold
/// thickness of subject j taken by measurer i.
class MeasurementMatrix {
 public:
  /// Throws DomainError for ragged rows, an empty grid or non-positive entries.
  explicit MeasurementMatrix(std::vector<std::vector<double>> rows);

  std::size_t measurers() const noexcept { return rows_.size(); }
  std::size_t subjects() const noexcept { return rows_.front().size(); }
  double at(std::size_t measurer, std::size_t subject) const { return rows_.at(measurer).at(subject); }
  std::vector<double> subject_readings(std::size_t subject) const;

  /// Each measurer's row multiplied by its own positive factor.
  MeasurementMatrix rescaled(std::span<const double> factors) const;

  std::vector<double> arithmetic_means() const;
  std::vector<double> geometric_means() const;

 private:
  std::vector<std::vector<double>> rows_;
};

/// Rule-of-thumb strength thresholds that some disciplines apply before
/// calling a correlation or a fit "high". Advisory text only.
struct DisciplineThreshold {
  std::string_view discipline;
  double min_abs_correlation;
  double min_r_squared;
};

std::span<const DisciplineThreshold> discipline_thresholds() noexcept;

}  // namespace scalewise
