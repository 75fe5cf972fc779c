#pragma once

// Scattering cross sections: Thomson scattering off free charges and the
// low-energy (Euler-Heisenberg) photon-photon cross section, plus the
// two-photon centre-of-momentum kinematics that feed it.

#include <cmath>
#include <string>

#include "qlink/constants.hpp"
#include "qlink/errors.hpp"
#include "qlink/units.hpp"

namespace qlink {

struct ChargedSpecies {
    std::string name;
    Quantity mass{0.0, Unit::eV};
    int charge_magnitude = 1;  // |q| in units of e; 0 marks a neutral species

    static ChargedSpecies electron() {
        return {"electron", {constants::electron_mass_eV, Unit::eV}, 1};
    }
    static ChargedSpecies proton() {
        return {"proton", {constants::proton_mass_eV, Unit::eV}, 1};
    }
    static ChargedSpecies alpha() {
        return {"alpha", {constants::alpha_particle_mass_eV, Unit::eV}, 2};
    }
    static ChargedSpecies neutral(std::string name_, double mass_eV) {
        return {std::move(name_), {mass_eV, Unit::eV}, 0};
    }
};

/// sigma_Th = (8 pi / 3) (Z^2 alpha)^2 (hbar c)^2 / m^2, in m^2.
/// Neutral species scatter nothing and return 0.
inline Quantity thomson_cross_section(const ChargedSpecies& species) {
    const double m = as_energy_eV(species.mass);
    if (m <= 0.0) throw domain_error("species mass must be positive");
    if (species.charge_magnitude == 0) return {0.0, Unit::m2};

    const double z2_alpha =
        static_cast<double>(species.charge_magnitude * species.charge_magnitude) *
        constants::fine_structure;
    const double sigma = (8.0 * constants::pi / 3.0) * z2_alpha * z2_alpha *
                         constants::hbar_c_eV_m * constants::hbar_c_eV_m / (m * m);
    return {sigma, Unit::m2};
}

/// Euler-Heisenberg low-energy limit,
///   sigma_gg = 937 alpha^4 omega^6 / (10125 pi m_e^8),
/// valid for centre-of-momentum photon energies below the electron mass.
inline Quantity photon_photon_cross_section(const Quantity& omega_com) {
    const double w = as_energy_eV(omega_com);
    if (w < 0.0) throw domain_error("centre-of-momentum energy must be non-negative");
    if (w >= constants::electron_mass_eV)
        throw domain_error("photon-photon cross section invalid at or above the electron mass (" +
                           std::to_string(w) + " eV >= " +
                           std::to_string(constants::electron_mass_eV) + " eV)");

    const double m = constants::electron_mass_eV;
    const double a2 = constants::fine_structure * constants::fine_structure;
    const double w_over_m = w / m;
    const double r3 = w_over_m * w_over_m * w_over_m;
    const double sigma_natural = (937.0 / (10125.0 * constants::pi)) * a2 * a2 * r3 * r3 /
                                 (m * m);  // eV^-2
    return {sigma_natural * constants::hbar_c_eV_m * constants::hbar_c_eV_m, Unit::m2};
}

/// Angular convention for the two-photon centre-of-momentum energy
/// omega = sqrt(E1 E2 (1 - cos theta) / 2).
struct AngleModel {
    enum class Kind { head_on, isotropic_mean, fixed };
    Kind kind = Kind::isotropic_mean;
    double theta_rad = 0.0;  // only read for Kind::fixed

    static AngleModel head_on() { return {Kind::head_on, 0.0}; }
    static AngleModel isotropic_mean() { return {Kind::isotropic_mean, 0.0}; }
    static AngleModel fixed(double theta) { return {Kind::fixed, theta}; }

    /// The (1 - cos theta) factor this convention assigns.
    double one_minus_cos() const {
        switch (kind) {
            case Kind::head_on: return 2.0;
            case Kind::isotropic_mean: return 1.0;  // <1 - cos theta> over isotropy
            case Kind::fixed: return 1.0 - std::cos(theta_rad);
        }
        return 1.0;
    }
};

inline Quantity com_energy(const Quantity& e1, const Quantity& e2, const AngleModel& model) {
    const double a = as_energy_eV(e1);
    const double b = as_energy_eV(e2);
    if (a <= 0.0 || b <= 0.0) throw domain_error("photon energies must be positive");
    return {std::sqrt(a * b * model.one_minus_cos() / 2.0), Unit::eV};
}

}  // namespace qlink
