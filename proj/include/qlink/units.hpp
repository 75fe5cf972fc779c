#pragma once

// Unit-tagged physical scalars over a closed unit list, with checked
// conversions and a small parse grammar: `<number><whitespace?><unit>`.
// Scientific notation is accepted; SI prefixes (p n u m k M G T) are
// accepted on eV and Hz only (e.g. "100 keV", "600 THz", "5 neV").

#include <array>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>

#include "qlink/constants.hpp"
#include "qlink/errors.hpp"

namespace qlink {

enum class Unit {
    eV,
    J,
    m,
    cm,
    km,
    pc,
    AU,
    ly,
    s,
    Hz,
    K,
    per_m3,
    per_cm3,
    per_m2_s,
    per_cm2_s,
    m2,
    cm2,
    per_s,
    W_per_m2_nm,
    nW_per_m2_sr,
};

enum class Dimension {
    energy,
    length,
    time,
    frequency,  // Hz and s^-1 share this dimension
    temperature,
    number_density,
    particle_flux,
    area,
    spectral_irradiance,
    surface_brightness,
};

namespace detail {

struct UnitInfo {
    Unit unit;
    std::string_view token;
    Dimension dim;
    double to_canonical;  // multiply to reach the dimension's canonical unit
};

// Canonical units: eV, m, s, Hz(=s^-1), K, m^-3, m^-2 s^-1, m^2 and the two
// single-member radiometric units.
inline constexpr std::array<UnitInfo, 20> unit_table{{
    {Unit::eV, "eV", Dimension::energy, 1.0},
    {Unit::J, "J", Dimension::energy, 1.0 / constants::eV_in_J},
    {Unit::m, "m", Dimension::length, 1.0},
    {Unit::cm, "cm", Dimension::length, 1e-2},
    {Unit::km, "km", Dimension::length, 1e3},
    {Unit::pc, "pc", Dimension::length, constants::parsec_m},
    {Unit::AU, "AU", Dimension::length, constants::au_m},
    {Unit::ly, "ly", Dimension::length, constants::light_year_m},
    {Unit::s, "s", Dimension::time, 1.0},
    {Unit::Hz, "Hz", Dimension::frequency, 1.0},
    {Unit::per_s, "s^-1", Dimension::frequency, 1.0},
    {Unit::K, "K", Dimension::temperature, 1.0},
    {Unit::per_m3, "m^-3", Dimension::number_density, 1.0},
    {Unit::per_cm3, "cm^-3", Dimension::number_density, 1e6},
    {Unit::per_m2_s, "m^-2 s^-1", Dimension::particle_flux, 1.0},
    {Unit::per_cm2_s, "cm^-2 s^-1", Dimension::particle_flux, 1e4},
    {Unit::m2, "m^2", Dimension::area, 1.0},
    {Unit::cm2, "cm^2", Dimension::area, 1e-4},
    {Unit::W_per_m2_nm, "W m^-2 nm^-1", Dimension::spectral_irradiance, 1.0},
    {Unit::nW_per_m2_sr, "nW m^-2 sr^-1", Dimension::surface_brightness, 1.0},
}};

inline const UnitInfo& info(Unit u) {
    for (const auto& e : unit_table)
        if (e.unit == u) return e;
    throw dimension_error("unknown unit enumerator");
}

inline std::string accepted_unit_list() {
    std::string out;
    for (const auto& e : unit_table) {
        if (!out.empty()) out += ", ";
        out += e.token;
    }
    return out;
}

inline std::optional<double> si_prefix_factor(char c) {
    switch (c) {
        case 'p': return 1e-12;
        case 'n': return 1e-9;
        case 'u': return 1e-6;
        case 'm': return 1e-3;
        case 'k': return 1e3;
        case 'M': return 1e6;
        case 'G': return 1e9;
        case 'T': return 1e12;
        default: return std::nullopt;
    }
}

}  // namespace detail

inline std::string_view unit_token(Unit u) { return detail::info(u).token; }
inline Dimension dimension_of(Unit u) { return detail::info(u).dim; }

struct Quantity {
    double value = 0.0;
    Unit unit = Unit::eV;

    Quantity() = default;
    Quantity(double v, Unit u) : value(v), unit(u) {}

    Dimension dimension() const { return dimension_of(unit); }

    /// Value re-expressed in the dimension's canonical unit (eV, m, s, ...).
    double canonical() const { return value * detail::info(unit).to_canonical; }

    bool operator==(const Quantity&) const = default;
};

/// Re-express `q` exactly in `target`; throws dimension_error naming both
/// units when their dimensions differ.
inline Quantity convert(const Quantity& q, Unit target) {
    const auto& from = detail::info(q.unit);
    const auto& to = detail::info(target);
    if (from.dim != to.dim)
        throw dimension_error("cannot convert " + std::string(from.token) + " to " +
                              std::string(to.token) + ": incompatible dimensions");
    return {q.value * (from.to_canonical / to.to_canonical), target};
}

inline double value_in(const Quantity& q, Unit target) { return convert(q, target).value; }

inline Quantity operator+(const Quantity& a, const Quantity& b) {
    return {a.value + convert(b, a.unit).value, a.unit};
}

inline Quantity operator-(const Quantity& a, const Quantity& b) {
    return {a.value - convert(b, a.unit).value, a.unit};
}

inline Quantity operator*(double s, const Quantity& q) { return {s * q.value, q.unit}; }
inline Quantity operator*(const Quantity& q, double s) { return {s * q.value, q.unit}; }
inline Quantity operator/(const Quantity& q, double s) { return {q.value / s, q.unit}; }

/// Dimensionless ratio of two quantities of the same dimension.
inline double ratio(const Quantity& a, const Quantity& b) {
    return a.canonical() / convert(b, a.unit).canonical();
}

/// Parse `<number><whitespace?><unit>`. Prefixed eV/Hz parse to the base
/// unit ("14.4 keV" -> Quantity(1.44e4, eV)).
inline Quantity parse_quantity(std::string_view text) {
    const std::string s(text);
    std::size_t pos = 0;
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;

    const char* begin = s.c_str() + pos;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin)
        throw parse_error("expected a number at byte " + std::to_string(pos), pos);

    std::size_t tok_begin = static_cast<std::size_t>(end - s.c_str());
    while (tok_begin < s.size() && std::isspace(static_cast<unsigned char>(s[tok_begin])))
        ++tok_begin;
    std::size_t tok_end = s.size();
    while (tok_end > tok_begin && std::isspace(static_cast<unsigned char>(s[tok_end - 1])))
        --tok_end;
    const std::string token = s.substr(tok_begin, tok_end - tok_begin);
    if (token.empty())
        throw parse_error("missing unit at byte " + std::to_string(tok_begin) +
                              "; accepted units: " + detail::accepted_unit_list(),
                          tok_begin);

    for (const auto& e : detail::unit_table)
        if (token == e.token) return {v, e.unit};

    // SI-prefixed energy or frequency.
    if (token.size() >= 2) {
        if (auto f = detail::si_prefix_factor(token[0])) {
            const std::string base = token.substr(1);
            if (base == "eV") return {v * *f, Unit::eV};
            if (base == "Hz") return {v * *f, Unit::Hz};
        }
    }
    throw parse_error("unknown unit \"" + token + "\" at byte " + std::to_string(tok_begin) +
                          "; accepted units: " + detail::accepted_unit_list() +
                          " (SI prefixes p n u m k M G T on eV and Hz)",
                      tok_begin);
}

/// Photon/thermal energy of a quantity: eV/J pass through, Hz applies
/// E = h nu, K applies E = k_B T. Anything else is rejected.
inline double as_energy_eV(const Quantity& q) {
    switch (q.dimension()) {
        case Dimension::energy: return q.canonical();
        case Dimension::frequency: return constants::h_planck_eV_s * q.canonical();
        case Dimension::temperature: return constants::k_boltzmann_eV_per_K * q.canonical();
        default:
            throw dimension_error("cannot interpret " + std::string(unit_token(q.unit)) +
                                  " as an energy");
    }
}

/// E = h c / lambda for a wavelength in nm.
inline double photon_energy_eV_from_wavelength_nm(double lambda_nm) {
    if (lambda_nm <= 0.0) throw domain_error("wavelength must be positive");
    return constants::hc_eV_nm / lambda_nm;
}

inline double photon_wavelength_nm_from_energy_eV(double e_eV) {
    if (e_eV <= 0.0) throw domain_error("photon energy must be positive");
    return constants::hc_eV_nm / e_eV;
}

inline double frequency_Hz_from_energy_eV(double e_eV) {
    return e_eV / constants::h_planck_eV_s;
}

}  // namespace qlink
