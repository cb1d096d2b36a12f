#pragma once

#include <string>

namespace wsrel {

/// Default report rendering: 6 significant digits.
std::string formatSignificant(double value, int digits = 6);

/// Availability as a percentage truncated (not rounded) to 4 decimals,
/// e.g. 0.99997256 -> "99.9972".
std::string truncatedPercent(double availability);

}  // namespace wsrel
