// Small unit helpers. Angles are radians everywhere inside the library;
// degrees appear only at the config/CLI/CSV boundary.
#pragma once

#include <cmath>
#include <numbers>

namespace pmimo {

inline constexpr double kPi = std::numbers::pi;

inline double deg2rad(double deg) { return deg * (kPi / 180.0); }
inline double rad2deg(double rad) { return rad * (180.0 / kPi); }

// Power quantities: 10 log10. Amplitude curves use 20 log10 at the call site.
inline double to_db(double linear) { return 10.0 * std::log10(linear); }
inline double from_db(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace pmimo
