#pragma once

// Physical constants in SI units (CODATA 2018 recommended values).
//
// The library works in SI with hbar explicit. Expressions written in
// Gaussian units with c = 1 map over by replacing the magnetic interaction
// e v·A/c with q v·A and mu·B keeps its form with mu in J/T. Nothing in the
// nonrelativistic Lagrangians used here depends on c; speed_of_light only
// feeds the |v| < 0.01 c guard.
namespace inertphase::constants {

inline constexpr double hbar = 1.054571817e-34;                    // J·s
inline constexpr double neutron_mass = 1.67492749804e-27;          // kg
inline constexpr double neutron_moment_magnitude = 9.6623651e-27;  // J/T, |mu_n|
inline constexpr double speed_of_light = 299792458.0;              // m/s

// Nonrelativistic guard applied to every drift velocity.
inline constexpr double max_speed_fraction_of_c = 0.01;

}  // namespace inertphase::constants
