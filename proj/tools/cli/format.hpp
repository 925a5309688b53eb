#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace diracsea::cli {

/// %.17g; round-trips every double and is byte-stable across runs.
std::string fmt(double value);

/// Accepts plain numbers ("1.1781", "-2e-3") and multiples of pi such as
/// "pi", "-pi/2", "3pi/8", "0.5*pi". Throws std::invalid_argument otherwise.
double parse_angle(std::string_view text);

/// Splits on commas and parses each piece with parse_angle.
std::vector<double> parse_angle_list(std::string_view text);

}  // namespace diracsea::cli
