#pragma once

namespace gaussens::constants {

// CODATA 2018
inline constexpr double planck_mass_kg = 2.176434e-8;
// IAU nominal solar mass parameter divided by G (CODATA 2018)
inline constexpr double solar_mass_kg = 1.98841e30;

inline constexpr double solar_mass_in_planck_units = solar_mass_kg / planck_mass_kg;

}  // namespace gaussens::constants
