#pragma once

namespace cmpol::constants {

// CODATA 2018 values, SI. All internal frequencies are angular (rad/s);
// serialized outputs report nu = omega/2pi.
inline constexpr double hbar      = 1.054571817e-34;   // J s
inline constexpr double mu_bohr   = 9.2740100783e-24;  // J/T
inline constexpr double mu_vacuum = 1.25663706212e-6;  // N/A^2

inline constexpr double pi     = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// gamma = g_e mu_B / hbar, rad s^-1 T^-1.
inline constexpr double gyromagnetic_ratio(double g_e) {
    return g_e * mu_bohr / hbar;
}

}  // namespace cmpol::constants
