#pragma once

// Gravitational redshift between two static radii of a Schwarzschild body,
// the induced overlap loss between Gaussian pulse spectra, and the maximum
// coherent path length bound l^2/r_S.

#include <cmath>
#include <string>

#include "qlink/constants.hpp"
#include "qlink/errors.hpp"
#include "qlink/quadrature.hpp"
#include "qlink/units.hpp"

namespace qlink {

struct SchwarzschildBody {
    std::string name;
    Quantity schwarzschild_radius{0.0, Unit::m};

    static SchwarzschildBody earth() {
        return {"earth", {constants::earth_schwarzschild_m, Unit::m}};
    }
    static SchwarzschildBody sun() {
        return {"sun", {constants::sun_schwarzschild_m, Unit::m}};
    }

    void validate() const {
        if (schwarzschild_radius.canonical() <= 0.0)
            throw domain_error("body \"" + name + "\": Schwarzschild radius must be positive");
    }
};

/// A Gaussian pulse spectrum f(W) ~ exp(-(W - peak)^2 / 4 width^2). Only the
/// ratios peak/width and delta enter the overlap, so peak and width may be
/// given in Hz or eV interchangeably (same unit for both).
struct GaussianPulse {
    Quantity peak{0.0, Unit::Hz};
    Quantity width{0.0, Unit::Hz};

    double peak_over_width() const {
        const double p = as_energy_eV(peak);
        const double w = as_energy_eV(width);
        if (p <= 0.0 || w <= 0.0) throw domain_error("pulse peak and width must be positive");
        return p / w;
    }

    void validate() const {
        // The narrow-pulse closed form assumes peak >> width.
        if (peak_over_width() <= 10.0)
            throw domain_error("pulse peak/width must exceed 10 (got " +
                               std::to_string(peak_over_width()) + ")");
    }
};

/// Upsilon = sqrt((1 - r_S/r_A) / (1 - r_S/r_B)). With
/// `include_orbital_motion` the denominator term picks up the extra factor
/// 3/2 accounting for relative motion of the observers.
inline double redshift_factor(const SchwarzschildBody& body, const Quantity& r_a,
                              const Quantity& r_b, bool include_orbital_motion = false) {
    body.validate();
    const double rs = convert(body.schwarzschild_radius, Unit::m).value;
    const double ra = convert(r_a, Unit::m).value;
    const double rb = convert(r_b, Unit::m).value;
    const double denominator_factor = include_orbital_motion ? 1.5 : 1.0;
    if (ra <= rs || rb <= rs * denominator_factor)
        throw domain_error("radius inside the horizon of \"" + body.name + "\" (r_S = " +
                           std::to_string(rs) + " m)");
    return std::sqrt((1.0 - rs / ra) / (1.0 - denominator_factor * rs / rb));
}

/// delta = |Upsilon^{1/2} - 1|, evaluated stably for Upsilon near 1.
inline double redshift_delta(double upsilon) {
    if (upsilon <= 0.0) throw domain_error("Upsilon must be positive");
    return std::abs(std::expm1(0.25 * std::log(upsilon * upsilon)));
}

/// delta computed directly from the radii without forming Upsilon - 1 in
/// double precision: with q = (r_S/r_B' - r_S/r_A)/(1 - r_S/r_B'),
/// delta = |(1+q)^{1/4} - 1|.
inline double redshift_delta(const SchwarzschildBody& body, const Quantity& r_a,
                             const Quantity& r_b, bool include_orbital_motion = false) {
    body.validate();
    const double rs = convert(body.schwarzschild_radius, Unit::m).value;
    const double ra = convert(r_a, Unit::m).value;
    const double rb = convert(r_b, Unit::m).value;
    const double k = include_orbital_motion ? 1.5 : 1.0;
    if (ra <= rs || rb <= rs * k)
        throw domain_error("radius inside the horizon of \"" + body.name + "\"");
    const double q = (k * rs / rb - rs / ra) / (1.0 - k * rs / rb);
    return std::abs(std::expm1(0.25 * std::log1p(q)));
}

/// Closed-form overlap of the emitted and received Gaussian spectra,
///   Delta = sqrt(2(1-d) / (1+(1-d)^2)) exp(-d^2 (peak/width)^2 / (4 (1+(1-d)^2))).
inline double gaussian_overlap(const GaussianPulse& pulse, double delta) {
    if (delta < 0.0 || delta >= 1.0) throw domain_error("delta must be in [0, 1)");
    pulse.validate();
    const double u = 1.0 - delta;
    const double r = pulse.peak_over_width();
    const double denom = 1.0 + u * u;
    const double exponent = -(delta * delta * r * r) / (4.0 * denom);
    return std::sqrt(2.0 * u / denom) * std::exp(exponent);
}

/// The same overlap by quadrature of integral_0^inf f(W) sqrt(u) f(uW) dW
/// with u = 1 - delta. Agrees with the closed form when peak >> width; the
/// integrand support is localized analytically before integrating.
inline double gaussian_overlap_numeric(const GaussianPulse& pulse, double delta,
                                       const QuadratureSpec& spec = {}) {
    if (delta < 0.0 || delta >= 1.0) throw domain_error("delta must be in [0, 1)");
    pulse.validate();
    const double u = 1.0 - delta;

    // Work in units of the width; peak = r.
    const double r = pulse.peak_over_width();
    const auto f = [r](double w) {
        const double z = (w - r) * 0.5;
        if (std::abs(z) > 26.0) return 0.0;  // exp(-676); below double noise
        return std::pow(2.0 * constants::pi, -0.25) * std::exp(-z * z);
    };
    const auto integrand = [&](double w) { return f(w) * std::sqrt(u) * f(u * w); };

    // The product's exponent peaks at w* = r (1+u)/(1+u^2) with combined
    // width ~ 2/sqrt(1+u^2); integrate a generous window around it.
    const double w_star = r * (1.0 + u) / (1.0 + u * u);
    const double half_window = 60.0;
    const double lo = std::max(0.0, w_star - half_window);
    const double hi = w_star + half_window;

    // If the two peaks are so far apart that the product underflows
    // everywhere, the overlap is numerically zero.
    if (integrand(w_star) == 0.0 && integrand(r) == 0.0 && integrand(r / u) == 0.0)
        return 0.0;

    return integrate_adaptive(integrand, lo, hi, spec).value;
}

/// Longest path a pulse may travel under this body's field while its phase
/// remains recoverable: c t_max bounded by l^2 / r_S for closest approach l.
inline Quantity max_coherent_path(const SchwarzschildBody& body,
                                  const Quantity& closest_approach) {
    body.validate();
    const double rs = convert(body.schwarzschild_radius, Unit::m).value;
    const double l = convert(closest_approach, Unit::m).value;
    if (l <= rs)
        throw domain_error("closest approach must exceed the Schwarzschild radius of \"" +
                           body.name + "\"");
    return {l * l / rs, Unit::m};
}

enum class CoherenceFlag { ok, marginal, violated };

/// `marginal` above 10% of the bound, `violated` beyond it.
inline CoherenceFlag classify_path_against_bound(double path_length_m, double bound_m) {
    if (path_length_m > bound_m) return CoherenceFlag::violated;
    if (path_length_m > 0.1 * bound_m) return CoherenceFlag::marginal;
    return CoherenceFlag::ok;
}

inline std::string to_string(CoherenceFlag f) {
    switch (f) {
        case CoherenceFlag::ok: return "ok";
        case CoherenceFlag::marginal: return "marginal";
        case CoherenceFlag::violated: return "violated";
    }
    return "?";
}

struct FidelityReport {
    double upsilon = 1.0;
    double delta = 0.0;
    double overlap = 1.0;       // Delta
    double overlap_sq = 1.0;    // Delta^2, the fidelity proxy
    bool effectively_zero = false;  // overlap_sq below 1e-30
};

/// Package Upsilon, delta and the overlap for one emitter/receiver pair.
inline FidelityReport fidelity_report(const SchwarzschildBody& body, const Quantity& r_emit,
                                      const Quantity& r_receive, const GaussianPulse& pulse,
                                      bool include_orbital_motion = false) {
    FidelityReport rep;
    rep.upsilon = redshift_factor(body, r_emit, r_receive, include_orbital_motion);
    rep.delta = redshift_delta(body, r_emit, r_receive, include_orbital_motion);
    rep.overlap = gaussian_overlap(pulse, rep.delta);
    rep.overlap_sq = rep.overlap * rep.overlap;
    rep.effectively_zero = rep.overlap_sq < 1e-30;
    return rep;
}

}  // namespace qlink
