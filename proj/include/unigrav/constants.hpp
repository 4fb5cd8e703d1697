#pragma once

#include <cmath>
#include <string>

namespace unigrav {

enum class Units { SI, Scaled };

Units parse_units(const std::string& text);
const char* to_string(Units units);

/// Speed of light, gravitational constant and vacuum permittivity. The
/// charge/mass coupling lambda = sqrt(4 pi eps0 gamma) is derived, not stored.
struct PhysicalConstants {
  double c = 1.0;
  double gamma = 1.0;
  double eps0 = 1.0 / (4.0 * M_PI);

  double lambda() const { return std::sqrt(4.0 * M_PI * eps0 * gamma); }

  /// CODATA 2018 c and eps0; gamma = 6.674e-11.
  static PhysicalConstants si() { return {299792458.0, 6.674e-11, 8.8541878128e-12}; }
  /// c = gamma = 1, eps0 = 1/(4 pi), hence lambda = 1.
  static PhysicalConstants scaled() { return {1.0, 1.0, 1.0 / (4.0 * M_PI)}; }
  static PhysicalConstants for_units(Units u) { return u == Units::SI ? si() : scaled(); }
};

}  // namespace unigrav
