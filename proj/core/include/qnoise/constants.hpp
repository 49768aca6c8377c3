#pragma once

#include <numbers>

namespace qnoise::constants {

inline constexpr double c = 299792458.0;         // m/s
inline constexpr double hbar = 1.054571817e-34;  // J s
inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace qnoise::constants
