#include "wsrel/render.hpp"

#include <cmath>

#include <fmt/format.h>

namespace wsrel {

std::string formatSignificant(double value, int digits) { return fmt::format("{:.{}g}", value, digits); }

std::string truncatedPercent(double availability) {
  // Units of 1e-4 percent. Scaling can land a hair below an exact
  // boundary (0.29 * 1e6 = 289999.99999999994), so snap those up.
  const double scaled = availability * 1e6;
  double units = std::floor(scaled);
  if (scaled - units > 1.0 - 1e-7) units += 1.0;
  const auto whole = static_cast<long long>(units);
  const char* sign = whole < 0 ? "-" : "";
  const long long magnitude = whole < 0 ? -whole : whole;
  return fmt::format("{}{}.{:04}", sign, magnitude / 10000, magnitude % 10000);
}

}  // namespace wsrel
