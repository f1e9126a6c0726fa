#pragma once

#include <numbers>

// Internal convention: angles in radians, pressures in Pa.
// Config files, CLI flags and CSV columns use degrees and kPa.

namespace pneumodel {

inline constexpr double kPi = std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }
constexpr double kpa_to_pa(double kpa) { return kpa * 1000.0; }
constexpr double pa_to_kpa(double pa) { return pa / 1000.0; }

} // namespace pneumodel
