#pragma once

namespace qrel::constants {

// CODATA 2018 values.
inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double planck_h = 6.62607015e-34;       // J s
inline constexpr double electron_mass = 9.1093837015e-31; // kg
inline constexpr double speed_of_light = 299792458.0;     // m/s
inline constexpr double planck_time = 5.391247e-44;       // s

} // namespace qrel::constants
