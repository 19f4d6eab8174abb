// angles.hpp
// Angle units and range reduction. Radians everywhere inside the library;
// degrees only at file/CLI boundaries.

#pragma once

#include <cmath>
#include <numbers>

namespace chiroptica {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline constexpr double deg_to_rad(double degrees) { return degrees * (pi / 180.0); }
inline constexpr double rad_to_deg(double radians) { return radians * (180.0 / pi); }

// Reduce to [0, 2*pi).
inline double wrap_two_pi(double angle) {
    double r = std::fmod(angle, two_pi);
    if (r < 0.0) r += two_pi;
    if (r == two_pi) r = 0.0;
    return r;
}

// Reduce to (-pi, pi].
inline double wrap_pi(double angle) {
    double r = wrap_two_pi(angle);
    return r > pi ? r - two_pi : r;
}

// Shortest angular distance between two angles, in [0, pi].
inline double circular_distance(double a, double b) {
    double d = wrap_two_pi(a - b);
    return d > pi ? two_pi - d : d;
}

} // namespace chiroptica
