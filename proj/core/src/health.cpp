#include "scalewise/health.hpp"

#include <cmath>
#include <string>

#include "scalewise/error.hpp"

namespace scalewise {

namespace {

constexpr double kKgPerLb = 0.45359237;
constexpr double kMetresPerInch = 0.0254;

}  // namespace

std::string_view to_string(MassUnit unit) noexcept {
  switch (unit) {
    case MassUnit::kg: return "kg";
    case MassUnit::lb: return "lb";
    case MassUnit::g: return "g";
  }
  return "?";
}

std::string_view to_string(LengthUnit unit) noexcept {
  switch (unit) {
    case LengthUnit::m: return "m";
    case LengthUnit::cm: return "cm";
    case LengthUnit::in: return "in";
  }
  return "?";
}

MassUnit parse_mass_unit(std::string_view tag) {
  for (auto u : {MassUnit::kg, MassUnit::lb, MassUnit::g}) {
    if (to_string(u) == tag) return u;
  }
  throw UnitError("unknown mass unit '" + std::string(tag) + "' (expected kg, lb or g)");
}

LengthUnit parse_length_unit(std::string_view tag) {
  for (auto u : {LengthUnit::m, LengthUnit::cm, LengthUnit::in}) {
    if (to_string(u) == tag) return u;
  }
  throw UnitError("unknown length unit '" + std::string(tag) + "' (expected m, cm or in)");
}

double to_kilograms(double weight, MassUnit unit) noexcept {
  switch (unit) {
    case MassUnit::kg: return weight;
    case MassUnit::lb: return weight * kKgPerLb;
    case MassUnit::g: return weight / 1000.0;
  }
  return weight;
}

double to_metres(double height, LengthUnit unit) noexcept {
  switch (unit) {
    case LengthUnit::m: return height;
    case LengthUnit::cm: return height / 100.0;
    case LengthUnit::in: return height * kMetresPerInch;
  }
  return height;
}

BodyMetrics::BodyMetrics(double weight, MassUnit mass_unit, double height, LengthUnit length_unit)
    : weight_(weight), mass_unit_(mass_unit), height_(height), length_unit_(length_unit) {
  if (!(weight > 0.0) || !std::isfinite(weight)) throw DomainError("weight must be positive");
  if (!(height > 0.0) || !std::isfinite(height)) throw DomainError("height must be positive");
}

double bmi(const BodyMetrics& m) noexcept {
  const double h = m.height_m();
  return m.weight_kg() / (h * h);
}

double ponderal(const BodyMetrics& m) noexcept {
  const double h = m.height_m();
  return m.weight_kg() / (h * h * h);
}

std::string_view to_string(BmiCategory category) noexcept {
  switch (category) {
    case BmiCategory::underweight_or_normal: return "underweight/normal";
    case BmiCategory::overweight: return "overweight";
    case BmiCategory::obese: return "obese";
  }
  return "?";
}

BmiCategory classify(KgPerSquareMetre bmi_value) {
  const double v = bmi_value.value;
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("BMI must be positive");
  if (v >= 30.0) return BmiCategory::obese;
  if (v >= 25.0) return BmiCategory::overweight;
  return BmiCategory::underweight_or_normal;
}

BmiCategory classify(const BodyMetrics& m) { return classify(KgPerSquareMetre{bmi(m)}); }

}  // namespace scalewise
