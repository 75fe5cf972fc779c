#pragma once

// Physical constants used throughout the library, in the internal canonical
// units (energies in eV, lengths in m, times in s). Values are CODATA 2018
// unless noted; length scales are the IAU definitions.

namespace qlink::constants {

// Dimensionless.
inline constexpr double fine_structure = 7.2973525693e-3;
inline constexpr double apery_zeta3 = 1.2020569031595943;  // Riemann zeta(3)
inline constexpr double pi = 3.14159265358979323846;

// Particle masses, eV.
inline constexpr double electron_mass_eV = 5.1099895000e5;
inline constexpr double proton_mass_eV = 9.3827208816e8;
inline constexpr double alpha_particle_mass_eV = 3.7273794066e9;

// Conversion spine.
inline constexpr double hbar_c_eV_m = 1.973269804e-7;     // hbar*c, eV m
inline constexpr double h_planck_eV_s = 4.135667696e-15;  // h, eV s
inline constexpr double c_m_per_s = 2.99792458e8;         // exact
inline constexpr double k_boltzmann_eV_per_K = 8.617333262e-5;
inline constexpr double eV_in_J = 1.602176634e-19;  // exact
inline constexpr double hc_eV_nm = 1.23984198e3;    // h*c, eV nm

// Length scales, m (IAU).
inline constexpr double parsec_m = 3.0856775814913673e16;
inline constexpr double au_m = 1.495978707e11;
inline constexpr double light_year_m = 9.4607304725808e15;

// Radiometry.
inline constexpr double stefan_boltzmann_W_m2_K4 = 5.670374419e-8;

// Astronomy reference values.
inline constexpr double sun_radius_m = 6.957e8;        // IAU nominal
inline constexpr double sun_t_eff_K = 5778.0;          // effective temperature
inline constexpr double solar_constant_W_m2 = 1361.0;  // total irradiance at 1 AU
inline constexpr double cmb_temperature_K = 2.7255;

// Schwarzschild radii of the built-in gravitating bodies, m.
inline constexpr double earth_schwarzschild_m = 8.87e-3;
inline constexpr double sun_schwarzschild_m = 2.95e3;

}  // namespace qlink::constants
