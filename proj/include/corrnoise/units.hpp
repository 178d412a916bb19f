#pragma once

#include <string>
#include <string_view>

namespace corrnoise::units {

// Physical dimension of a configuration quantity. Values are converted to internal units:
// time in us, angular frequency in rad/us, angle in rad, length in um, speed in um/us,
// temperature in K.
enum class Dimension { Time, Frequency, Angle, Length, Speed, Temperature, Dimensionless };

// Parses "<number> <unit>", e.g. "500 ns", "1 GHz" (cyclic, multiplied by 2pi), "10 rad/us",
// "1/us", "60 deg", "5 km/s", "20 mK". Throws DomainError naming the accepted units.
double parse_quantity(std::string_view text, Dimension dim);

std::string_view accepted_units(Dimension dim);

// hbar/k_B in K us.
inline constexpr double kHbarOverKb = 7.638232577e-6;

// beta = hbar/(k_B T) in us for T in kelvin.
double beta_from_temperature(double kelvin);

} // namespace corrnoise::units
