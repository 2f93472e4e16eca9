#pragma once

namespace jamopt::constants {

// Geophysical and physical constants used to derive scenario quantities.
inline constexpr double mu_earth = 3.986004418e14;      // m^3/s^2
inline constexpr double earth_radius_m = 6378137.0;     // equatorial, m
inline constexpr double speed_of_light = 299792458.0;   // m/s
inline constexpr double boltzmann = 1.380649e-23;       // J/K

}  // namespace jamopt::constants
