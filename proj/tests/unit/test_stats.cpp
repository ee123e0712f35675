#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "scalewise/error.hpp"
#include "scalewise/scales.hpp"
#include "scalewise/statements.hpp"
#include "scalewise/stats.hpp"

using namespace scalewise;

namespace {

// O(n^2) pair enumeration.
double tau_oracle(const PairedSample& s) {
  long c = 0;
  long d = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      const double p = (s.x()[i] - s.x()[j]) * (s.y()[i] - s.y()[j]);
      (p > 0 ? c : d) += 1;
    }
  }
  return static_cast<double>(c - d) / static_cast<double>(c + d);
}

double rho_oracle(const PairedSample& s) { return pearson_r(PairedSample(ranks(s.x()), ranks(s.y()))); }

PairedSample random_sample(std::mt19937_64& rng, std::size_t n) {
  std::vector<double> x(n);
  std::vector<double> y(n);
  std::iota(x.begin(), x.end(), 1.0);
  std::iota(y.begin(), y.end(), 1.0);
  std::shuffle(x.begin(), x.end(), rng);
  std::shuffle(y.begin(), y.end(), rng);
  std::uniform_real_distribution<double> jitter(0.0, 0.5);
  for (auto& v : x) v = v * 3.7 + jitter(rng);
  for (auto& v : y) v = v * -1.3 + jitter(rng);
  return PairedSample(std::move(x), std::move(y));
}

}  // namespace

TEST(Means, Examples) {
  const double aqi[] = {25, 25, 301, 25, 25};
  EXPECT_DOUBLE_EQ(arithmetic_mean(aqi), 80.2);
  const double g[] = {4, 9};
  EXPECT_DOUBLE_EQ(geometric_mean(g), 6.0);
  const double m[] = {1, 2, 3};
  EXPECT_EQ(median(m), 2.0);
  const double even[] = {4, 1, 3, 2};
  EXPECT_EQ(median(even), 2.5);
}

TEST(Means, Errors) {
  EXPECT_THROW(arithmetic_mean({}), DomainError);
  EXPECT_THROW(median({}), DomainError);
  const double bad[] = {1, 0};
  EXPECT_THROW(geometric_mean(bad), DomainError);
}

TEST(Kendall, Extremes) {
  EXPECT_DOUBLE_EQ(kendall_tau(PairedSample({1, 2, 3, 4}, {10, 20, 30, 40})), 1.0);
  EXPECT_DOUBLE_EQ(kendall_tau(PairedSample({1, 2, 3, 4}, {4, 3, 2, 1})), -1.0);
  EXPECT_THROW(kendall_tau(PairedSample({1, 1, 2}, {1, 2, 3})), TieError);
  EXPECT_THROW(kendall_tau(PairedSample({1}, {1})), DomainError);
}

TEST(Spearman, Extremes) {
  EXPECT_DOUBLE_EQ(spearman_rho(PairedSample({1, 2, 3}, {5, 6, 7})), 1.0);
  EXPECT_DOUBLE_EQ(spearman_rho(PairedSample({1, 2, 3}, {3, 2, 1})), -1.0);
  EXPECT_THROW(spearman_rho(PairedSample({1, 2, 3}, {1, 1, 3})), TieError);
}

TEST(Pearson, ExamplesAndErrors) {
  EXPECT_NEAR(pearson_r(PairedSample({1, 2, 3, 4}, {3, 5, 7, 9})), 1.0, 1e-15);
  EXPECT_NEAR(pearson_r(PairedSample({1, 2, 3, 4}, {-1, -2, -3, -4})), -1.0, 1e-15);
  EXPECT_THROW(pearson_r(PairedSample({1, 2, 3}, {2, 2, 2})), DegenerateError);
}

TEST(Correlation, OraclesOnRandomSamples) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto s = random_sample(rng, 2 + static_cast<std::size_t>(i % 9));
    EXPECT_NEAR(kendall_tau(s), tau_oracle(s), 1e-12);
    EXPECT_NEAR(spearman_rho(s), rho_oracle(s), 1e-12);
  }
}

TEST(Correlation, InvariantUnderAdmissibleTransforms) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    const auto s = random_sample(rng, 3 + static_cast<std::size_t>(i % 8));
    std::vector<double> ax;
    std::vector<double> ay;
    std::vector<double> mx;
    std::vector<double> my;
    const auto fx = sample_transform(ScaleType::interval, 1, i);
    const auto fy = sample_transform(ScaleType::interval, 2, i);
    const auto gx = sample_transform(ScaleType::ordinal, 3, i, s.x());
    const auto gy = sample_transform(ScaleType::ordinal, 4, i, s.y());
    for (double v : s.x()) ax.push_back(fx(v)), mx.push_back(gx(v));
    for (double v : s.y()) ay.push_back(fy(v)), my.push_back(gy(v));
    const PairedSample affine(ax, ay);
    const PairedSample monotone(mx, my);
    EXPECT_NEAR(pearson_r(affine), pearson_r(s), 1e-12);
    EXPECT_NEAR(kendall_tau(monotone), kendall_tau(s), 1e-12);
    EXPECT_NEAR(spearman_rho(monotone), spearman_rho(s), 1e-12);
  }
}

TEST(Pearson, FixedAffineInvariance) {
  const PairedSample s({1, 2, 4, 7, 11}, {3, 1, 4, 1, 5});
  std::vector<double> x;
  std::vector<double> y;
  for (double v : s.x()) x.push_back(2 * v + 1);
  for (double v : s.y()) y.push_back(3 * v - 7);
  EXPECT_NEAR(pearson_r(PairedSample(x, y)), pearson_r(s), 1e-12);
}

TEST(Regression, RecoversLines) {
  for (auto [slope, intercept] : {std::pair{1.446, -3.6}, std::pair{1.816, -13.99}}) {
    std::vector<double> x;
    std::vector<double> y;
    for (double b = 18; b <= 40; b += 1.5) {
      x.push_back(b);
      y.push_back(slope * b + intercept);
    }
    const auto line = linear_regression(PairedSample(x, y));
    EXPECT_NEAR(line.slope, slope, 1e-9);
    EXPECT_NEAR(line.intercept, intercept, 1e-9);
    EXPECT_NEAR(line.r_squared, 1.0, 1e-12);
  }
}

TEST(Regression, FlatAndDegenerate) {
  const auto flat = linear_regression(PairedSample({1, 2, 3}, {5, 5, 5}));
  EXPECT_EQ(flat.slope, 0.0);
  EXPECT_EQ(flat.r_squared, 0.0);
  EXPECT_DOUBLE_EQ(flat.intercept, 5.0);
  EXPECT_THROW(linear_regression(PairedSample({2, 2, 2}, {1, 2, 3})), DegenerateError);
}

TEST(Regression, RSquaredIsPearsonSquared) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto s = random_sample(rng, 3 + static_cast<std::size_t>(i % 8));
    const double r = pearson_r(s);
    EXPECT_NEAR(linear_regression(s).r_squared, r * r, 1e-12);
  }
}

TEST(Screening, SensitivitySpecificity) {
  EXPECT_DOUBLE_EQ(sensitivity({.tp = 443, .fn = 557}), 0.443);
  EXPECT_DOUBLE_EQ(specificity({.fp = 99, .tn = 901}), 0.901);
  EXPECT_DOUBLE_EQ(sensitivity({.tp = 5, .fn = 5}), 0.5);
  EXPECT_THROW(sensitivity({}), DomainError);
  EXPECT_THROW(specificity({.tp = 3}), DomainError);
}

TEST(MeasurementMatrix, GeometricComparisonSurvivesRowRescaling) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> reading(1, 40);
  bool arithmetic_flipped = false;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::vector<double>> rows(4, std::vector<double>(3));
    for (auto& row : rows) for (auto& v : row) v = reading(rng);
    const MeasurementMatrix m(rows);
    std::vector<double> factors;
    for (int i = 0; i < 4; ++i) factors.push_back(sample_transform(ScaleType::ratio, 77, trial, {}, i)(1.0));
    const auto r = m.rescaled(factors);
    const auto g0 = m.geometric_means();
    const auto g1 = r.geometric_means();
    EXPECT_EQ(g0[0] > g0[1], g1[0] > g1[1]);
    const auto a0 = m.arithmetic_means();
    const auto a1 = r.arithmetic_means();
    arithmetic_flipped |= (a0[0] > a0[1]) != (a1[0] > a1[1]);
  }
  EXPECT_TRUE(arithmetic_flipped);
}

TEST(MeasurementMatrix, FalsifierFindsArithmeticWitness) {
  const MeasurementMatrix m({{12, 10}, {3, 6}, {8, 7}});
  const auto bound = measurer_comparison(m, 0, 1, MeanKind::arithmetic, false);
  EXPECT_TRUE(falsify(bound.statement, bound.bindings).meaningless());
}

TEST(MeasurementMatrix, Validation) {
  EXPECT_THROW(MeasurementMatrix({}), DomainError);
  EXPECT_THROW(MeasurementMatrix({{1, 2}, {3}}), DomainError);
  EXPECT_THROW(MeasurementMatrix({{1, 0}}), DomainError);
}

TEST(Disciplines, Thresholds) {
  const auto t = discipline_thresholds();
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t.front().discipline, "physics");
  EXPECT_EQ(t.front().min_abs_correlation, 0.95);
  EXPECT_EQ(t.back().min_abs_correlation, 0.6);
}
