#pragma once

// Interaction rates, mean free paths and per-segment survival probabilities.
//
// Conventions: Gamma = c n sigma for number densities and Gamma = Phi sigma
// for directed fluxes; l = 1/(n sigma) and l = c/(Phi sigma). Any scattering
// event counts as full decoherence of the photon, so the survival
// probability exp(-tau) is the probability the quantum state arrives intact.
//
// Spectral rates over per-steradian backgrounds apply the forward-hemisphere
// angular weight  integral cos(theta) dOmega = pi sr.

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qlink/constants.hpp"
#include "qlink/environments.hpp"
#include "qlink/errors.hpp"
#include "qlink/quadrature.hpp"
#include "qlink/units.hpp"
#include "qlink/xsec.hpp"

namespace qlink {

inline constexpr double forward_hemisphere_sr = constants::pi;

struct PathSegment {
    std::string label;
    Quantity length{0.0, Unit::m};
    std::vector<ParticlePopulation> populations;
    std::vector<RadiationBackground> backgrounds;
    // Literature-sourced opacities expressed directly as mean free paths.
    std::vector<std::pair<std::string, Quantity>> mfp_overrides;

    void validate() const {
        if (length.canonical() <= 0.0)
            throw domain_error("segment \"" + label + "\": length must be positive");
        for (const auto& p : populations) p.validate();
        for (const auto& b : backgrounds) b.validate();
    }
};

/// One scattering contribution inside a segment.
struct Contribution {
    std::string label;
    double rate_per_s = 0.0;
    double mean_free_path_m = std::numeric_limits<double>::infinity();
    double optical_depth = 0.0;
    bool non_interacting = false;  // zero density/flux or zero cross section
};

struct SegmentReport {
    std::string label;
    double length_m = 0.0;
    std::vector<Contribution> contributions;
    double optical_depth = 0.0;
};

struct LinkBudgetReport {
    std::vector<SegmentReport> segments;
    double total_optical_depth = 0.0;
    double survival_probability = 1.0;
};

/// l = 1/(n sigma). Zero density or cross section yields the infinite
/// sentinel (a non-interacting channel), not an error.
inline Quantity mean_free_path_density(const Quantity& n, const Quantity& sigma) {
    const double n_m3 = convert(n, Unit::per_m3).value;
    const double s_m2 = convert(sigma, Unit::m2).value;
    if (n_m3 < 0.0 || s_m2 < 0.0) throw domain_error("density and cross section must be >= 0");
    if (n_m3 == 0.0 || s_m2 == 0.0)
        return {std::numeric_limits<double>::infinity(), Unit::m};
    return {1.0 / (n_m3 * s_m2), Unit::m};
}

/// Gamma = Phi sigma.
inline Quantity rate_from_flux(const Quantity& phi, const Quantity& sigma) {
    const double phi_m2s = convert(phi, Unit::per_m2_s).value;
    const double s_m2 = convert(sigma, Unit::m2).value;
    if (phi_m2s < 0.0 || s_m2 < 0.0) throw domain_error("flux and cross section must be >= 0");
    return {phi_m2s * s_m2, Unit::per_s};
}

/// l = c/(Phi sigma), infinite sentinel on a zero product.
inline Quantity mfp_from_flux(const Quantity& phi, const Quantity& sigma) {
    const double gamma = rate_from_flux(phi, sigma).value;
    if (gamma == 0.0) return {std::numeric_limits<double>::infinity(), Unit::m};
    return {constants::c_m_per_s / gamma, Unit::m};
}

/// Gamma = c n sigma for a density-described population.
inline Quantity rate_from_density(const Quantity& n, const Quantity& sigma) {
    const double l = mean_free_path_density(n, sigma).value;
    if (std::isinf(l)) return {0.0, Unit::per_s};
    return {constants::c_m_per_s / l, Unit::per_s};
}

namespace detail {

/// sigma_gg(omega(E)) in m^2 for a background photon of energy e_eV against
/// the test photon, honouring the kinematic validity cap omega < m_e.
inline double sigma_gg_m2(double e_test_eV, double e_bg_eV, const AngleModel& model) {
    const double w2 = e_test_eV * e_bg_eV * model.one_minus_cos() / 2.0;
    if (w2 <= 0.0) return 0.0;
    const double w = std::sqrt(w2);
    if (w >= constants::electron_mass_eV) return 0.0;  // outside validity; excluded
    return photon_photon_cross_section({w, Unit::eV}).value;
}

}  // namespace detail

/// Photon-photon interaction rate of a test photon against a radiation
/// background:  Gamma = [pi sr] * integral sigma_gg(omega(E)) dPhi/dE dE,
/// with the bracket applied only to per-steradian backgrounds. Integration
/// runs over ln E for power laws and blackbodies, ln nu for the EBL and
/// wavelength for tabulated spectra; the upper energy bound is capped where
/// omega(E) reaches the electron mass.
inline Quantity rate_spectral(const Quantity& test_energy, const RadiationBackground& bg,
                              const AngleModel& model = AngleModel::isotropic_mean(),
                              const QuadratureSpec& spec = {}) {
    const double e_test = as_energy_eV(test_energy);
    if (e_test <= 0.0) throw domain_error("test energy must be positive");
    if (e_test >= constants::electron_mass_eV)
        throw domain_error("test photon energy " + std::to_string(e_test) +
                           " eV is at or above the electron mass; outside the validity "
                           "domain of the photon-photon cross section");

    // omega < m_e  <=>  E < 2 m_e^2 / (k E_test), k the angular factor.
    const double m = constants::electron_mass_eV;
    const double e_kinematic_cap = 2.0 * m * m / (model.one_minus_cos() * e_test);

    const double rate = std::visit(
        [&](const auto& mdl) -> double {
            using T = std::decay_t<decltype(mdl)>;
            if constexpr (std::is_same_v<T, Blackbody>) {
                const double t = mdl.temperature_eV();
                const double e_lo = t * 1e-3;
                const double e_hi = std::min(t * 80.0, std::min(e_kinematic_cap, m));
                // d(rate)/dlnE = sigma(E) * flux_per_eV(E) * E, cm^2 * cm^-2 s^-1
                const auto integrand = [&](double ln_e) {
                    const double e = std::exp(ln_e);
                    const double sigma_cm2 =
                        detail::sigma_gg_m2(e_test, e, model) * 1e4;
                    return sigma_cm2 * spectral_photon_flux(bg, {e, Unit::eV}) * e;
                };
                const double per_sr =
                    integrate_adaptive(integrand, std::log(e_lo), std::log(e_hi), spec).value;
                return per_sr * (mdl.per_steradian ? forward_hemisphere_sr : 1.0);
            } else if constexpr (std::is_same_v<T, DoublePowerLaw>) {
                const double e_lo = as_energy_eV(mdl.support_min);
                const double e_hi =
                    std::min({as_energy_eV(mdl.support_max), m, e_kinematic_cap});
                if (e_hi <= e_lo)
                    throw domain_error("power-law support is empty after the electron-mass cap");
                const auto integrand = [&](double ln_e) {
                    const double e = std::exp(ln_e);
                    const double sigma_cm2 = detail::sigma_gg_m2(e_test, e, model) * 1e4;
                    // flux is per keV; convert the ln E measure accordingly.
                    return sigma_cm2 * spectral_photon_flux(bg, {e, Unit::eV}) * (e / 1e3);
                };
                const double per_sr =
                    integrate_adaptive(integrand, std::log(e_lo), std::log(e_hi), spec).value;
                return per_sr * forward_hemisphere_sr;
            } else if constexpr (std::is_same_v<T, LogQuadraticEBL>) {
                const double h = constants::h_planck_eV_s;
                const double nu_cap_GHz = e_kinematic_cap / h * 1e-9;
                const double nu_hi = std::min(mdl.nu_max_GHz, nu_cap_GHz);
                const auto integrand = [&](double ln_nu) {
                    const double nu_GHz = std::exp(ln_nu);
                    const double e = h * nu_GHz * 1e9;
                    const double sigma_cm2 = detail::sigma_gg_m2(e_test, e, model) * 1e4;
                    return sigma_cm2 * spectral_photon_flux(bg, {e, Unit::eV}) * e;
                };
                const double per_sr = integrate_adaptive(integrand, std::log(mdl.nu_min_GHz),
                                                         std::log(nu_hi), spec)
                                          .value;
                return per_sr * forward_hemisphere_sr;
            } else {
                // Directed irradiance table: piecewise Gauss-Kronrod over
                // each wavelength panel (the irradiance is linear there).
                const double lambda_cap_nm =
                    photon_wavelength_nm_from_energy_eV(e_kinematic_cap);
                double total = 0.0;
                for (std::size_t i = 1; i < mdl.samples.size(); ++i) {
                    const double a = std::max(mdl.samples[i - 1].first, lambda_cap_nm);
                    const double b = mdl.samples[i].first;
                    if (b <= a) continue;
                    const auto integrand = [&](double lambda_nm) {
                        const double e = photon_energy_eV_from_wavelength_nm(lambda_nm);
                        const double sigma_cm2 = detail::sigma_gg_m2(e_test, e, model) * 1e4;
                        return sigma_cm2 * spectral_photon_flux(bg, {lambda_nm * 1e-9, Unit::m});
                    };
                    total += detail::gk15(integrand, a, b).integral;
                }
                return total;
            }
        },
        bg.model);
    return {rate, Unit::per_s};
}

/// l_CMB = 1/(sigma_gg(omega) n_gamma) with omega from the angular model and
/// the blackbody mean photon energy.
inline Quantity mean_free_path_cmb(const Quantity& test_energy, const Quantity& t_cmb,
                                   const AngleModel& model = AngleModel::isotropic_mean()) {
    const auto omega = com_energy(test_energy, cmb_mean_energy(t_cmb), model);
    return mean_free_path_density(cmb_number_density(t_cmb),
                                  convert(photon_photon_cross_section(omega), Unit::m2));
}

/// Same, with the centre-of-momentum energy pinned directly.
inline Quantity mean_free_path_cmb_at_com(const Quantity& omega, const Quantity& t_cmb) {
    return mean_free_path_density(cmb_number_density(t_cmb),
                                  convert(photon_photon_cross_section(omega), Unit::m2));
}

/// Evaluate every contribution of every segment and fold them into optical
/// depths and a survival probability exp(-tau_total).
inline LinkBudgetReport link_budget(const std::vector<PathSegment>& segments,
                                    const Quantity& test_energy,
                                    const AngleModel& model = AngleModel::isotropic_mean(),
                                    const QuadratureSpec& spec = {}) {
    LinkBudgetReport report;
    for (const auto& seg : segments) {
        seg.validate();
        SegmentReport sr;
        sr.label = seg.label;
        sr.length_m = convert(seg.length, Unit::m).value;

        const auto push = [&](std::string label, const Quantity& mfp) {
            Contribution c;
            c.label = std::move(label);
            c.mean_free_path_m = convert(mfp, Unit::m).value;
            c.non_interacting = std::isinf(c.mean_free_path_m);
            c.rate_per_s =
                c.non_interacting ? 0.0 : constants::c_m_per_s / c.mean_free_path_m;
            c.optical_depth = c.non_interacting ? 0.0 : sr.length_m / c.mean_free_path_m;
            sr.contributions.push_back(std::move(c));
        };

        for (const auto& p : seg.populations) {
            const auto sigma = thomson_cross_section(p.species);
            if (p.density)
                push(p.name, mean_free_path_density(*p.density, sigma));
            else
                push(p.name, mfp_from_flux(*p.flux, sigma));
        }
        for (const auto& b : seg.backgrounds) {
            const double gamma = rate_spectral(test_energy, b, model, spec).value;
            push(b.name, gamma == 0.0
                             ? Quantity{std::numeric_limits<double>::infinity(), Unit::m}
                             : Quantity{constants::c_m_per_s / gamma, Unit::m});
        }
        for (const auto& [label, mfp] : seg.mfp_overrides) push(label, mfp);

        for (const auto& c : sr.contributions) sr.optical_depth += c.optical_depth;
        report.total_optical_depth += sr.optical_depth;
        report.segments.push_back(std::move(sr));
    }
    report.survival_probability = std::exp(-report.total_optical_depth);
    return report;
}

}  // namespace qlink
