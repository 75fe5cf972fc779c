#pragma once

// Catalog of charged-particle populations and radiation backgrounds of the
// interstellar medium, the heliosphere and near-Earth space, plus ingestion
// of tabulated irradiance spectra.
//
// Spectrum CSV format: UTF-8, header line `wavelength_nm,irradiance_W_m2_nm`,
// one sample per line, `.` decimal separator, LF or CRLF, `#` comments.

#include <algorithm>
#include <cmath>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qlink/constants.hpp"
#include "qlink/errors.hpp"
#include "qlink/quadrature.hpp"
#include "qlink/units.hpp"
#include "qlink/xsec.hpp"

namespace qlink {

struct ParticlePopulation {
    std::string name;
    ChargedSpecies species;
    // Exactly one of density/flux is set.
    std::optional<Quantity> density;  // cm^-3 or m^-3
    std::optional<Quantity> flux;     // cm^-2 s^-1 or m^-2 s^-1
    std::optional<std::pair<Quantity, Quantity>> energy_range;
    // Abundance ~ R^-k beyond the reference distance; descriptive only.
    std::optional<double> radial_scaling_exponent;
    // Lower bound when the source is quoted as a range; rates use `flux`.
    std::optional<Quantity> flux_low;

    void validate() const {
        if (density.has_value() == flux.has_value())
            throw domain_error("population \"" + name +
                               "\": exactly one of density or flux must be set");
        if (density && density->canonical() < 0.0)
            throw domain_error("population \"" + name + "\": negative density");
        if (flux && flux->canonical() < 0.0)
            throw domain_error("population \"" + name + "\": negative flux");
    }

    static ParticlePopulation with_density(std::string name_, ChargedSpecies sp,
                                           Quantity n) {
        ParticlePopulation p{std::move(name_), std::move(sp), n, {}, {}, {}, {}};
        p.validate();
        return p;
    }
    static ParticlePopulation with_flux(std::string name_, ChargedSpecies sp, Quantity phi) {
        ParticlePopulation p{std::move(name_), std::move(sp), {}, phi, {}, {}, {}};
        p.validate();
        return p;
    }
};

// ---------------------------------------------------------------------------
// Radiation backgrounds

struct Blackbody {
    Quantity temperature{constants::cmb_temperature_K, Unit::K};  // K or eV
    bool per_steradian = true;

    double temperature_eV() const { return as_energy_eV(temperature); }
};

/// dN/dE = A / ((E/E_b)^a1 + (E/E_b)^a2), photons / (cm^2 s sr keV).
struct DoublePowerLaw {
    double amplitude = 0.0;   // A
    Quantity break_energy{};  // E_b
    double a1 = 0.0;
    double a2 = 0.0;
    Quantity support_min{2.0e3, Unit::eV};
    Quantity support_max{2.0e6, Unit::eV};
};

/// ln(nu I_nu) = c0 + c1 ln(nu) + c2 ln^2(nu), nu in GHz, nu I_nu in
/// W m^-2 sr^-1 (reported brightnesses in nW m^-2 sr^-1).
struct LogQuadraticEBL {
    double c0 = 0.0, c1 = 0.0, c2 = 0.0;
    double nu_min_GHz = 0.0, nu_max_GHz = 0.0;
};

/// Directed irradiance samples (wavelength nm, F_lambda W m^-2 nm^-1).
struct TabulatedIrradiance {
    std::vector<std::pair<double, double>> samples;

    double lambda_min_nm() const { return samples.front().first; }
    double lambda_max_nm() const { return samples.back().first; }

    /// Linear interpolation; refuses extrapolation.
    double irradiance_at(double lambda_nm) const {
        if (lambda_nm < lambda_min_nm() || lambda_nm > lambda_max_nm())
            throw domain_error("wavelength " + std::to_string(lambda_nm) +
                               " nm outside tabulated span [" +
                               std::to_string(lambda_min_nm()) + ", " +
                               std::to_string(lambda_max_nm()) + "] nm");
        auto it = std::lower_bound(samples.begin(), samples.end(), lambda_nm,
                                   [](const auto& s, double x) { return s.first < x; });
        if (it->first == lambda_nm) return it->second;
        const auto& hi = *it;
        const auto& lo = *(it - 1);
        const double t = (lambda_nm - lo.first) / (hi.first - lo.first);
        return lo.second + t * (hi.second - lo.second);
    }

    /// Trapezoidal total irradiance, W m^-2.
    double integrated_irradiance_W_m2() const {
        double total = 0.0;
        for (std::size_t i = 1; i < samples.size(); ++i)
            total += 0.5 * (samples[i].second + samples[i - 1].second) *
                     (samples[i].first - samples[i - 1].first);
        return total;
    }

    void validate() const {
        if (samples.size() < 2)
            throw domain_error("tabulated spectrum needs at least 2 samples");
        for (std::size_t i = 0; i < samples.size(); ++i) {
            if (samples[i].second < 0.0)
                throw domain_error("negative irradiance at sample " + std::to_string(i));
            if (i > 0 && samples[i].first <= samples[i - 1].first)
                throw domain_error("wavelengths not strictly increasing at sample " +
                                   std::to_string(i));
        }
    }
};

struct RadiationBackground {
    std::string name;
    std::variant<Blackbody, DoublePowerLaw, LogQuadraticEBL, TabulatedIrradiance> model;

    bool per_steradian() const {
        return std::visit(
            [](const auto& m) -> bool {
                using T = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<T, Blackbody>) return m.per_steradian;
                else if constexpr (std::is_same_v<T, TabulatedIrradiance>) return false;
                else return true;
            },
            model);
    }

    void validate() const {
        std::visit(
            [this](const auto& m) {
                using T = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<T, Blackbody>) {
                    if (m.temperature_eV() <= 0.0)
                        throw domain_error("background \"" + name +
                                           "\": temperature must be positive");
                } else if constexpr (std::is_same_v<T, DoublePowerLaw>) {
                    if (m.amplitude <= 0.0 || as_energy_eV(m.break_energy) <= 0.0 ||
                        m.a2 <= m.a1)
                        throw domain_error("background \"" + name +
                                           "\": need A > 0, E_b > 0, a2 > a1");
                } else if constexpr (std::is_same_v<T, TabulatedIrradiance>) {
                    m.validate();
                } else {
                    if (m.nu_max_GHz <= m.nu_min_GHz || m.nu_min_GHz <= 0.0)
                        throw domain_error("background \"" + name +
                                           "\": bad frequency support");
                }
            },
            model);
    }
};

// ---------------------------------------------------------------------------
// Cosmic microwave background moments

/// n_gamma = 2 zeta(3) T^3 / pi^2, returned in cm^-3.
inline Quantity cmb_number_density(const Quantity& temperature) {
    const double t = as_energy_eV(temperature);
    if (t <= 0.0) throw domain_error("temperature must be positive");
    const double hbarc = constants::hbar_c_eV_m;
    const double n_m3 = 2.0 * constants::apery_zeta3 / (constants::pi * constants::pi) *
                        (t * t * t) / (hbarc * hbarc * hbarc);
    return convert({n_m3, Unit::per_m3}, Unit::per_cm3);
}

/// Mean photon energy of a blackbody, E = pi^4 T / (30 zeta(3)).
inline Quantity cmb_mean_energy(const Quantity& temperature) {
    const double t = as_energy_eV(temperature);
    if (t <= 0.0) throw domain_error("temperature must be positive");
    const double pi4 = constants::pi * constants::pi * constants::pi * constants::pi;
    return {pi4 / (30.0 * constants::apery_zeta3) * t, Unit::eV};
}

/// Blackbody energy density pi^2 T^4 / 15, eV per m^3.
inline double blackbody_energy_density_eV_m3(const Quantity& temperature) {
    const double t = as_energy_eV(temperature);
    const double hbarc = constants::hbar_c_eV_m;
    return constants::pi * constants::pi / 15.0 * (t * t * t * t) / (hbarc * hbarc * hbarc);
}

// ---------------------------------------------------------------------------
// Spectral photon flux
//
// Units are per the variant's natural spectral axis:
//   Blackbody        photons cm^-2 s^-1 sr^-1 eV^-1
//   DoublePowerLaw   photons cm^-2 s^-1 sr^-1 keV^-1
//   LogQuadraticEBL  photons cm^-2 s^-1 sr^-1 eV^-1
//   Tabulated        photons cm^-2 s^-1 nm^-1

namespace detail {

/// Blackbody photon spectral density dn/dE = E^2 / (pi^2 (hbar c)^3 (e^{E/T}-1)),
/// photons per m^3 per eV.
inline double planck_photon_density_per_eV_m3(double e_eV, double t_eV) {
    const double x = e_eV / t_eV;
    if (x > 700.0) return 0.0;  // exp overflow guard; contribution is nil
    const double hbarc = constants::hbar_c_eV_m;
    const double denom = std::expm1(x);
    if (denom <= 0.0) return 0.0;
    return e_eV * e_eV / (constants::pi * constants::pi * hbarc * hbarc * hbarc * denom);
}

}  // namespace detail

/// Evaluate a background's photon flux density at `at` (eV for blackbody /
/// power law / EBL, nm wavelength or Hz for tabulated spectra).
inline double spectral_photon_flux(const RadiationBackground& bg, const Quantity& at) {
    return std::visit(
        [&](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Blackbody>) {
                const double e = as_energy_eV(at);
                if (e <= 0.0) throw domain_error("photon energy must be positive");
                // Isotropic radiance: c/(4 pi) * dn/dE, then m^-2 -> cm^-2.
                return detail::planck_photon_density_per_eV_m3(e, m.temperature_eV()) *
                       constants::c_m_per_s / (4.0 * constants::pi) * 1e-4;
            } else if constexpr (std::is_same_v<T, DoublePowerLaw>) {
                const double e = as_energy_eV(at);
                if (e < as_energy_eV(m.support_min) || e > as_energy_eV(m.support_max))
                    throw domain_error("energy " + std::to_string(e) +
                                       " eV outside power-law support");
                const double x = e / as_energy_eV(m.break_energy);
                return m.amplitude / (std::pow(x, m.a1) + std::pow(x, m.a2));
            } else if constexpr (std::is_same_v<T, LogQuadraticEBL>) {
                const double e = as_energy_eV(at);
                const double nu_GHz = frequency_Hz_from_energy_eV(e) * 1e-9;
                if (nu_GHz < m.nu_min_GHz || nu_GHz > m.nu_max_GHz)
                    throw domain_error("frequency " + std::to_string(nu_GHz) +
                                       " GHz outside EBL support");
                const double ln_nu = std::log(nu_GHz);
                const double nu_inu_W = std::exp(m.c0 + m.c1 * ln_nu + m.c2 * ln_nu * ln_nu);
                // nu I_nu [W m^-2 sr^-1] -> photons per (cm^2 s sr eV):
                //   I_nu / (h nu) * dnu/dE = nu I_nu / (E_J * E_eV)
                const double e_J = e * constants::eV_in_J;
                return nu_inu_W / (e_J * e) * 1e-4;
            } else {
                const double lambda_nm =
                    at.dimension() == Dimension::length
                        ? at.canonical() * 1e9
                        : photon_wavelength_nm_from_energy_eV(as_energy_eV(at));
                const double f_lambda = m.irradiance_at(lambda_nm);  // W m^-2 nm^-1
                const double e_J =
                    photon_energy_eV_from_wavelength_nm(lambda_nm) * constants::eV_in_J;
                return f_lambda / e_J * 1e-4;  // photons cm^-2 s^-1 nm^-1
            }
        },
        bg.model);
}

/// Integrated EBL brightness over its support, nW m^-2 sr^-1.
inline double ebl_integrated_brightness_nW_m2_sr(const LogQuadraticEBL& ebl,
                                                 const QuadratureSpec& spec = {}) {
    const auto integrand = [&](double ln_nu) {
        return std::exp(ebl.c0 + ebl.c1 * ln_nu + ebl.c2 * ln_nu * ln_nu);
    };
    const auto r = integrate_adaptive(integrand, std::log(ebl.nu_min_GHz),
                                      std::log(ebl.nu_max_GHz), spec);
    return r.value * 1e9;  // W -> nW
}

// ---------------------------------------------------------------------------
// Spectrum ingestion

/// Parse the spectrum CSV format described at the top of this header.
inline TabulatedIrradiance load_solar_spectrum(std::istream& in) {
    TabulatedIrradiance table;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string trimmed = line;
        trimmed.erase(0, trimmed.find_first_not_of(" \t"));
        if (trimmed.empty() || trimmed[0] == '#') continue;

        if (!header_seen) {
            if (trimmed != "wavelength_nm,irradiance_W_m2_nm")
                throw parse_error("line " + std::to_string(line_no) +
                                      ": expected header `wavelength_nm,irradiance_W_m2_nm`",
                                  0, line_no);
            header_seen = true;
            continue;
        }

        const auto comma = trimmed.find(',');
        if (comma == std::string::npos)
            throw parse_error("line " + std::to_string(line_no) + ": expected two comma-separated fields",
                              0, line_no);
        const std::string a = trimmed.substr(0, comma);
        const std::string b = trimmed.substr(comma + 1);
        char* end = nullptr;
        const double lambda = std::strtod(a.c_str(), &end);
        if (end == a.c_str() || *end != '\0')
            throw parse_error("line " + std::to_string(line_no) + ": bad wavelength \"" + a + "\"",
                              0, line_no);
        const double irr = std::strtod(b.c_str(), &end);
        if (end == b.c_str() || *end != '\0')
            throw parse_error("line " + std::to_string(line_no) + ": bad irradiance \"" + b + "\"",
                              0, line_no);

        if (irr < 0.0)
            throw parse_error("line " + std::to_string(line_no) + ": negative irradiance", 0,
                              line_no);
        if (!table.samples.empty() && lambda <= table.samples.back().first)
            throw parse_error("line " + std::to_string(line_no) +
                                  ": wavelengths must be strictly increasing",
                              0, line_no);
        table.samples.emplace_back(lambda, irr);
    }
    if (!header_seen)
        throw parse_error("missing header line `wavelength_nm,irradiance_W_m2_nm`", 0, 0);
    table.validate();
    return table;
}

/// Blackbody stand-in for a measured solar spectrum: Planck irradiance at
/// `distance` from a sphere of radius r_emitter and temperature t_eff,
///   F_lambda = pi B_lambda(T) (R/d)^2,
/// sampled on a log grid. Total irradiance approaches
/// sigma T^4 (R/d)^2 (about 1367 W/m^2 at 1 AU for the solar values).
inline TabulatedIrradiance synthetic_blackbody_irradiance(
    double t_eff_K = constants::sun_t_eff_K, double r_emitter_m = constants::sun_radius_m,
    double distance_m = constants::au_m, double lambda_min_nm = 0.1,
    double lambda_max_nm = 2400.0, std::size_t n_samples = 1600) {
    TabulatedIrradiance table;
    table.samples.reserve(n_samples);
    const double dilution = (r_emitter_m / distance_m) * (r_emitter_m / distance_m);
    const double log_step = std::log(lambda_max_nm / lambda_min_nm) /
                            static_cast<double>(n_samples - 1);
    const double t_eV = t_eff_K * constants::k_boltzmann_eV_per_K;

    for (std::size_t i = 0; i < n_samples; ++i) {
        const double lambda_nm = lambda_min_nm * std::exp(log_step * static_cast<double>(i));
        const double e_eV = photon_energy_eV_from_wavelength_nm(lambda_nm);
        // Planck spectral radiance via the photon density:
        //   B_lambda = (c/4pi) (dn/dE) E * dE/dlambda, dE/dlambda = E/lambda.
        const double dn_dE = detail::planck_photon_density_per_eV_m3(e_eV, t_eV);
        const double radiance_W_m2_nm_sr = dn_dE * constants::c_m_per_s /
                                           (4.0 * constants::pi) * e_eV * constants::eV_in_J *
                                           (e_eV / lambda_nm);
        table.samples.emplace_back(lambda_nm,
                                   constants::pi * radiance_W_m2_nm_sr * dilution);
    }
    table.validate();
    return table;
}

// ---------------------------------------------------------------------------
// Built-in catalog

struct CatalogEntry {
    std::variant<ParticlePopulation, RadiationBackground> item;

    const std::string& name() const {
        return std::visit([](const auto& v) -> const std::string& { return v.name; }, item);
    }
    bool is_population() const {
        return std::holds_alternative<ParticlePopulation>(item);
    }
    const ParticlePopulation& population() const {
        return std::get<ParticlePopulation>(item);
    }
    const RadiationBackground& background() const {
        return std::get<RadiationBackground>(item);
    }
};

/// The built-in particle populations and radiation backgrounds.
inline std::vector<CatalogEntry> builtin_catalog() {
    using CS = ChargedSpecies;
    std::vector<CatalogEntry> cat;
    const auto cm3 = [](double v) { return Quantity{v, Unit::per_cm3}; };
    const auto cm2s = [](double v) { return Quantity{v, Unit::per_cm2_s}; };
    const auto eV = [](double v) { return Quantity{v, Unit::eV}; };

    const auto add_density = [&](std::string n, CS sp, double v) {
        cat.push_back({ParticlePopulation::with_density(std::move(n), std::move(sp), cm3(v))});
    };

    // Interstellar medium and local neighbourhood.
    add_density("ism_electrons", CS::electron(), 1.0);
    add_density("hii_dense_electrons", CS::electron(), 1e4);
    add_density("lic_hydrogen", CS::neutral("hydrogen", constants::proton_mass_eV), 0.24);
    add_density("lic_electrons", CS::electron(), 0.09);
    add_density("lic_protons", CS::proton(), 0.07);
    add_density("lic_helium", CS::neutral("helium", constants::alpha_particle_mass_eV), 0.014);
    add_density("local_bubble_protons", CS::proton(), 0.005);

    // Solar wind near 1 AU.
    {
        auto p = ParticlePopulation::with_density("solar_wind_protons", CS::proton(), cm3(6.6));
        p.energy_range = {eV(1.0), eV(1e4)};
        cat.push_back({std::move(p)});
        auto e = ParticlePopulation::with_density("solar_wind_electrons", CS::electron(), cm3(7.1));
        e.energy_range = {eV(1.0), eV(1e4)};
        cat.push_back({std::move(e)});
        add_density("solar_wind_alphas", CS::alpha(), 0.25);
    }

    // Energetic transient / trapped populations (directed fluxes).
    {
        auto spe = ParticlePopulation::with_flux("spe_protons", CS::proton(), cm2s(1e5));
        spe.energy_range = {eV(1e6), eV(1e9)};
        spe.radial_scaling_exponent = 2.0;  // abundance ~ R^-2 beyond 1 AU
        cat.push_back({std::move(spe)});

        auto gcr = ParticlePopulation::with_flux("gcr_protons", CS::proton(), cm2s(10.0));
        gcr.flux_low = cm2s(1.0);  // quoted range 1-10; rates use the upper bound
        cat.push_back({std::move(gcr)});

        auto vap = ParticlePopulation::with_flux("van_allen_protons", CS::proton(), cm2s(1e8));
        vap.energy_range = {eV(1e3), eV(3e8)};
        cat.push_back({std::move(vap)});
        auto vae = ParticlePopulation::with_flux("van_allen_electrons", CS::electron(), cm2s(1e7));
        vae.energy_range = {eV(1e3), eV(1e8)};
        cat.push_back({std::move(vae)});
    }

    // Radiation backgrounds.
    cat.push_back({RadiationBackground{
        "cmb", Blackbody{{constants::cmb_temperature_K, Unit::K}, true}}});
    cat.push_back({RadiationBackground{
        "cxb", DoublePowerLaw{10.15e-2, {29.99e3, Unit::eV}, 1.32, 2.88}}});
    cat.push_back({RadiationBackground{
        "ebl_optical", LogQuadraticEBL{-111.231, 15.2089, -0.623, 4e4, 1e6}}});
    cat.push_back({RadiationBackground{"solar_blackbody", synthetic_blackbody_irradiance()}});

    return cat;
}

inline const CatalogEntry& catalog_lookup(const std::vector<CatalogEntry>& cat,
                                          const std::string& name) {
    for (const auto& e : cat)
        if (e.name() == name) return e;
    std::string known;
    for (const auto& e : cat) {
        if (!known.empty()) known += ", ";
        known += e.name();
    }
    throw not_found_error("no catalog entry named \"" + name + "\"; known entries: " + known);
}

}  // namespace qlink
