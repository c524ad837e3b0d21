#pragma once

// Unit conventions used throughout:
//   - public parameters are linear frequencies in GHz and times in ns,
//   - internal math uses angular frequencies in rad/ns (omega = 2*pi*f),
//   - decay rates are 1/ns.

#include <numbers>

namespace rezqu {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// GHz (linear) -> rad/ns (angular)
inline constexpr double angular(double f_ghz) { return two_pi * f_ghz; }

// rad/ns (angular) -> GHz (linear)
inline constexpr double linear(double omega) { return omega / two_pi; }

} // namespace rezqu
