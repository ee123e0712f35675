#pragma once

// Body-mass indices computed from unit-tagged weight and height.

#include <string_view>

namespace scalewise {

enum class MassUnit { kg, lb, g };
enum class LengthUnit { m, cm, in };

std::string_view to_string(MassUnit unit) noexcept;
std::string_view to_string(LengthUnit unit) noexcept;
/// Throws UnitError for unknown tags.
MassUnit parse_mass_unit(std::string_view tag);
LengthUnit parse_length_unit(std::string_view tag);

/// Exact conversion factors to kilograms and metres.
double to_kilograms(double weight, MassUnit unit) noexcept;
double to_metres(double height, LengthUnit unit) noexcept;

class BodyMetrics {
 public:
  /// Throws DomainError unless both values are finite and strictly positive.
  BodyMetrics(double weight, MassUnit mass_unit, double height, LengthUnit length_unit);

  double weight() const noexcept { return weight_; }
  double height() const noexcept { return height_; }
  MassUnit mass_unit() const noexcept { return mass_unit_; }
  LengthUnit length_unit() const noexcept { return length_unit_; }

  double weight_kg() const noexcept { return to_kilograms(weight_, mass_unit_); }
  double height_m() const noexcept { return to_metres(height_, length_unit_); }

 private:
  double weight_;
  MassUnit mass_unit_;
  double height_;
  LengthUnit length_unit_;
};

/// kg / m^2
double bmi(const BodyMetrics& m) noexcept;
/// kg / m^3
double ponderal(const BodyMetrics& m) noexcept;

enum class BmiCategory { underweight_or_normal, overweight, obese };

std::string_view to_string(BmiCategory category) noexcept;

/// A BMI value known to be in kg/m^2. There is no implicit conversion from
/// double: the obesity threshold only means something once units are fixed.
struct KgPerSquareMetre {
  double value;

  explicit constexpr KgPerSquareMetre(double v) noexcept : value(v) {}
};

/// Bands: below 25.0, [25.0, 30.0), 30.0 and above. Throws DomainError for
/// non-positive or non-finite input.
BmiCategory classify(KgPerSquareMetre bmi_value);
BmiCategory classify(const BodyMetrics& m);

}  // namespace scalewise
