#include <gtest/gtest.h>

#include "scalewise/error.hpp"
#include "scalewise/health.hpp"

using namespace scalewise;

TEST(Bmi, Examples) {
  EXPECT_DOUBLE_EQ(bmi({90, MassUnit::kg, 1.5, LengthUnit::m}), 40.0);
  EXPECT_DOUBLE_EQ(bmi({75, MassUnit::kg, 2.0, LengthUnit::m}), 18.75);
  EXPECT_DOUBLE_EQ(bmi({90, MassUnit::kg, 150, LengthUnit::cm}), 40.0);
}

TEST(Bmi, UnitRetaggingAgrees) {
  const double kg = 81.3;
  const double m = 1.77;
  const BodyMetrics metric(kg, MassUnit::kg, m, LengthUnit::m);
  const BodyMetrics imperial(kg / 0.45359237, MassUnit::lb, m / 0.0254, LengthUnit::in);
  const BodyMetrics grams(kg * 1000, MassUnit::g, m * 100, LengthUnit::cm);
  EXPECT_NEAR(bmi(imperial) / bmi(metric), 1.0, 1e-9);
  EXPECT_NEAR(bmi(grams) / bmi(metric), 1.0, 1e-9);
}

TEST(Ponderal, Examples) {
  EXPECT_DOUBLE_EQ(ponderal({80, MassUnit::kg, 2.0, LengthUnit::m}), 10.0);
  EXPECT_DOUBLE_EQ(ponderal({27, MassUnit::kg, 3.0, LengthUnit::m}), 1.0);
}

TEST(Ponderal, HeightHomogeneity) {
  const BodyMetrics base(70, MassUnit::kg, 1.8, LengthUnit::m);
  for (double alpha : {0.5, 2.0, 3.0}) {
    const BodyMetrics scaled(70, MassUnit::kg, 1.8 * alpha, LengthUnit::m);
    EXPECT_NEAR(ponderal(scaled), ponderal(base) / (alpha * alpha * alpha), 1e-12);
  }
}

TEST(Metrics, RejectNonPositive) {
  EXPECT_THROW(BodyMetrics(0, MassUnit::kg, 1.5, LengthUnit::m), DomainError);
  EXPECT_THROW(BodyMetrics(80, MassUnit::kg, -1, LengthUnit::m), DomainError);
}

TEST(Units, Parse) {
  EXPECT_EQ(parse_mass_unit("lb"), MassUnit::lb);
  EXPECT_EQ(parse_length_unit("cm"), LengthUnit::cm);
  EXPECT_THROW(parse_mass_unit("stone"), UnitError);
  EXPECT_THROW(parse_length_unit("ft"), UnitError);
}

TEST(Classify, Bands) {
  EXPECT_EQ(classify(KgPerSquareMetre{30.0}), BmiCategory::obese);
  EXPECT_EQ(classify(KgPerSquareMetre{29.9}), BmiCategory::overweight);
  EXPECT_EQ(classify(KgPerSquareMetre{25.0}), BmiCategory::overweight);
  EXPECT_EQ(classify(KgPerSquareMetre{18.75}), BmiCategory::underweight_or_normal);
  EXPECT_THROW(classify(KgPerSquareMetre{0}), DomainError);
  EXPECT_EQ(to_string(BmiCategory::underweight_or_normal), "underweight/normal");
}

TEST(Classify, CanonicalisesUnits) {
  EXPECT_EQ(classify(BodyMetrics(90, MassUnit::kg, 150, LengthUnit::cm)), BmiCategory::obese);
  EXPECT_EQ(classify(BodyMetrics(165, MassUnit::lb, 70, LengthUnit::in)), BmiCategory::underweight_or_normal);
}
