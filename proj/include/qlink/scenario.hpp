#pragma once

// Declarative end-to-end channel description and its evaluation: path
// segments with environments, gravity legs, an optional teleportation
// trial block, all folded into one ChannelReport.
//
// Scenario files are strict UTF-8 JSON: unknown keys are rejected with the
// offending key path; quantities are strings in the parse_quantity grammar
// ("100 keV", "1.3 pc").

#include <json.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlink/environments.hpp"
#include "qlink/errors.hpp"
#include "qlink/gravity.hpp"
#include "qlink/propagation.hpp"
#include "qlink/teleport.hpp"

namespace qlink {

using json = nlohmann::json;

struct GravityLeg {
    SchwarzschildBody body;
    Quantity r_emit{0.0, Unit::m};
    Quantity r_receive{0.0, Unit::m};
    std::optional<Quantity> closest_approach;
};

struct TeleportTrialsSpec {
    int count = 0;
    std::uint64_t seed = 0;
    std::optional<double> dephase_p;  // explicit channel noise
    bool couple_survival = true;      // otherwise p = 1 - survival (model choice)
};

struct Scenario {
    std::string name;
    std::optional<Quantity> test_energy;
    std::optional<GaussianPulse> pulse;
    std::vector<PathSegment> segments;
    std::vector<GravityLeg> gravity_legs;
    std::optional<TeleportTrialsSpec> teleport_trials;

    double test_energy_eV() const {
        if (test_energy) return as_energy_eV(*test_energy);
        return as_energy_eV(pulse->peak);
    }

    void validate() const {
        if (test_energy.has_value() == pulse.has_value())
            throw domain_error("scenario \"" + name +
                               "\": test_photon needs exactly one of energy or pulse");
        if (segments.empty() && gravity_legs.empty())
            throw domain_error("scenario \"" + name +
                               "\": needs at least one segment or gravity leg");
        for (const auto& s : segments) s.validate();
        for (const auto& g : gravity_legs) g.body.validate();
        if (pulse) pulse->validate();
        if (teleport_trials && teleport_trials->count <= 0)
            throw domain_error("scenario \"" + name + "\": teleport_trials.count must be > 0");
    }
};

struct GravityLegReport {
    std::string body;
    double upsilon = 1.0;
    double delta = 0.0;
    std::optional<double> overlap;      // Delta, present when a pulse is given
    std::optional<double> overlap_sq;   // Delta^2
    bool effectively_zero = false;
    double max_path_bound_m = 0.0;
    double path_length_m = 0.0;
    CoherenceFlag flag = CoherenceFlag::ok;
};

struct TeleportSummary {
    int count = 0;
    std::uint64_t seed = 0;
    double dephase_p = 0.0;
    std::string dephasing_source;  // "explicit", "coupled_to_survival" or "none"
    double mean_fidelity = 0.0;
    std::array<int, 4> outcome_histogram{};
};

struct Verdict {
    double survival_probability = 1.0;
    std::optional<double> worst_overlap_sq;
    bool tmax_violation = false;
};

struct ChannelReport {
    std::string scenario_name;
    LinkBudgetReport link;
    std::vector<GravityLegReport> gravity;
    std::optional<TeleportSummary> teleport;
    Verdict verdict;
};

/// Evaluate a scenario into a full channel report. Deterministic for a
/// fixed scenario (the teleport seed lives inside it).
inline ChannelReport evaluate(const Scenario& sc,
                              const AngleModel& model = AngleModel::isotropic_mean(),
                              const QuadratureSpec& spec = {}) {
    sc.validate();
    ChannelReport report;
    report.scenario_name = sc.name;

    const Quantity e_test{sc.test_energy_eV(), Unit::eV};
    report.link = link_budget(sc.segments, e_test, model, spec);
    report.verdict.survival_probability = report.link.survival_probability;

    double path_length_m = 0.0;
    for (const auto& seg : sc.segments) path_length_m += convert(seg.length, Unit::m).value;

    for (const auto& leg : sc.gravity_legs) {
        GravityLegReport lr;
        lr.body = leg.body.name;
        lr.upsilon = redshift_factor(leg.body, leg.r_emit, leg.r_receive);
        lr.delta = redshift_delta(leg.body, leg.r_emit, leg.r_receive);
        if (sc.pulse) {
            const double o = gaussian_overlap(*sc.pulse, lr.delta);
            lr.overlap = o;
            lr.overlap_sq = o * o;
            lr.effectively_zero = o * o < 1e-30;
            if (!report.verdict.worst_overlap_sq ||
                *lr.overlap_sq < *report.verdict.worst_overlap_sq)
                report.verdict.worst_overlap_sq = lr.overlap_sq;
        } else if (lr.delta == 0.0) {
            lr.overlap = 1.0;
            lr.overlap_sq = 1.0;
            if (!report.verdict.worst_overlap_sq)
                report.verdict.worst_overlap_sq = 1.0;
        }

        const Quantity approach = leg.closest_approach.value_or(
            convert(leg.r_emit, Unit::m).value < convert(leg.r_receive, Unit::m).value
                ? leg.r_emit
                : leg.r_receive);
        lr.max_path_bound_m = convert(max_coherent_path(leg.body, approach), Unit::m).value;
        lr.path_length_m =
            path_length_m > 0.0
                ? path_length_m
                : std::abs(convert(leg.r_receive, Unit::m).value -
                           convert(leg.r_emit, Unit::m).value);
        lr.flag = classify_path_against_bound(lr.path_length_m, lr.max_path_bound_m);
        if (lr.flag == CoherenceFlag::violated) report.verdict.tmax_violation = true;
        report.gravity.push_back(std::move(lr));
    }

    if (sc.teleport_trials) {
        const auto& tt = *sc.teleport_trials;
        TeleportSummary ts;
        ts.count = tt.count;
        ts.seed = tt.seed;
        if (tt.dephase_p) {
            ts.dephase_p = *tt.dephase_p;
            ts.dephasing_source = "explicit";
        } else if (tt.couple_survival) {
            // Model choice, not a physical identity: any scattering en route
            // is treated as full dephasing of the shared pair.
            ts.dephase_p = 1.0 - report.link.survival_probability;
            ts.dephasing_source = "coupled_to_survival";
        } else {
            ts.dephase_p = 0.0;
            ts.dephasing_source = "none";
        }

        std::mt19937_64 rng(tt.seed);
        double fid_sum = 0.0;
        for (int t = 0; t < tt.count; ++t) {
            const auto chi = random_qubit(rng);
            const auto out = teleport(chi, BellKind::PsiMinus, rng(), ts.dephase_p);
            fid_sum += out.fidelity_with_input;
            ++ts.outcome_histogram[static_cast<std::size_t>(out.classical_bits)];
        }
        ts.mean_fidelity = fid_sum / tt.count;
        report.teleport = std::move(ts);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Strict JSON parsing

namespace detail {

inline void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                                const std::string& path) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok)
            throw parse_error("unknown key \"" + path + "/" + key + "\" in scenario", 0, 0);
    }
}

inline Quantity quantity_field(const json& obj, const char* key, const std::string& path) {
    if (!obj.contains(key))
        throw parse_error("missing key \"" + path + "/" + key + "\"", 0, 0);
    if (!obj[key].is_string())
        throw parse_error("key \"" + path + "/" + key +
                              "\" must be a quantity string such as \"100 keV\"",
                          0, 0);
    return parse_quantity(obj[key].get<std::string>());
}

}  // namespace detail

/// Parse a scenario document, resolving population/background names against
/// `catalog`.
inline Scenario parse_scenario(const json& doc, const std::vector<CatalogEntry>& catalog) {
    if (!doc.is_object()) throw parse_error("scenario document must be a JSON object", 0, 0);
    detail::reject_unknown_keys(
        doc, {"name", "test_photon", "segments", "gravity_legs", "teleport_trials"}, "");

    Scenario sc;
    if (!doc.contains("name") || !doc["name"].is_string())
        throw parse_error("missing string key \"/name\"", 0, 0);
    sc.name = doc["name"].get<std::string>();

    if (!doc.contains("test_photon") || !doc["test_photon"].is_object())
        throw parse_error("missing object key \"/test_photon\"", 0, 0);
    const auto& tp = doc["test_photon"];
    detail::reject_unknown_keys(tp, {"energy", "pulse"}, "/test_photon");
    if (tp.contains("energy"))
        sc.test_energy = detail::quantity_field(tp, "energy", "/test_photon");
    if (tp.contains("pulse")) {
        const auto& p = tp["pulse"];
        detail::reject_unknown_keys(p, {"peak", "width"}, "/test_photon/pulse");
        sc.pulse = GaussianPulse{detail::quantity_field(p, "peak", "/test_photon/pulse"),
                                 detail::quantity_field(p, "width", "/test_photon/pulse")};
    }

    if (doc.contains("segments")) {
        if (!doc["segments"].is_array())
            throw parse_error("\"/segments\" must be an array", 0, 0);
        int idx = 0;
        for (const auto& s : doc["segments"]) {
            const std::string path = "/segments[" + std::to_string(idx++) + "]";
            detail::reject_unknown_keys(
                s, {"label", "length", "populations", "backgrounds", "mfp_overrides"}, path);
            PathSegment seg;
            seg.label = s.contains("label") ? s["label"].get<std::string>()
                                            : "segment_" + std::to_string(idx);
            seg.length = detail::quantity_field(s, "length", path);
            if (s.contains("populations"))
                for (const auto& name : s["populations"]) {
                    const auto& entry = catalog_lookup(catalog, name.get<std::string>());
                    if (!entry.is_population())
                        throw parse_error("\"" + entry.name() + "\" at " + path +
                                              " is a background, not a population",
                                          0, 0);
                    seg.populations.push_back(entry.population());
                }
            if (s.contains("backgrounds"))
                for (const auto& name : s["backgrounds"]) {
                    const auto& entry = catalog_lookup(catalog, name.get<std::string>());
                    if (entry.is_population())
                        throw parse_error("\"" + entry.name() + "\" at " + path +
                                              " is a population, not a background",
                                          0, 0);
                    seg.backgrounds.push_back(entry.background());
                }
            if (s.contains("mfp_overrides")) {
                int oi = 0;
                for (const auto& o : s["mfp_overrides"]) {
                    const std::string opath = path + "/mfp_overrides[" + std::to_string(oi++) + "]";
                    detail::reject_unknown_keys(o, {"label", "mfp"}, opath);
                    seg.mfp_overrides.emplace_back(o["label"].get<std::string>(),
                                                   detail::quantity_field(o, "mfp", opath));
                }
            }
            sc.segments.push_back(std::move(seg));
        }
    }

    if (doc.contains("gravity_legs")) {
        if (!doc["gravity_legs"].is_array())
            throw parse_error("\"/gravity_legs\" must be an array", 0, 0);
        int idx = 0;
        for (const auto& g : doc["gravity_legs"]) {
            const std::string path = "/gravity_legs[" + std::to_string(idx++) + "]";
            detail::reject_unknown_keys(
                g, {"body", "r_emit", "r_receive", "closest_approach"}, path);
            GravityLeg leg;
            if (!g.contains("body"))
                throw parse_error("missing key \"" + path + "/body\"", 0, 0);
            if (g["body"].is_string()) {
                const std::string body = g["body"].get<std::string>();
                if (body == "earth")
                    leg.body = SchwarzschildBody::earth();
                else if (body == "sun")
                    leg.body = SchwarzschildBody::sun();
                else
                    throw not_found_error("unknown body \"" + body +
                                          "\"; built-ins are \"earth\" and \"sun\"");
            } else {
                detail::reject_unknown_keys(g["body"], {"name", "schwarzschild_radius"},
                                            path + "/body");
                leg.body = SchwarzschildBody{
                    g["body"]["name"].get<std::string>(),
                    detail::quantity_field(g["body"], "schwarzschild_radius", path + "/body")};
            }
            leg.r_emit = detail::quantity_field(g, "r_emit", path);
            leg.r_receive = detail::quantity_field(g, "r_receive", path);
            if (g.contains("closest_approach"))
                leg.closest_approach = detail::quantity_field(g, "closest_approach", path);
            sc.gravity_legs.push_back(std::move(leg));
        }
    }

    if (doc.contains("teleport_trials")) {
        const auto& t = doc["teleport_trials"];
        detail::reject_unknown_keys(t, {"count", "seed", "dephase_p", "couple_survival"},
                                    "/teleport_trials");
        TeleportTrialsSpec tt;
        if (!t.contains("count") || !t.contains("seed"))
            throw parse_error("\"/teleport_trials\" needs count and seed", 0, 0);
        tt.count = t["count"].get<int>();
        tt.seed = t["seed"].get<std::uint64_t>();
        if (t.contains("dephase_p")) tt.dephase_p = t["dephase_p"].get<double>();
        if (t.contains("couple_survival")) tt.couple_survival = t["couple_survival"].get<bool>();
        sc.teleport_trials = tt;
    }

    sc.validate();
    return sc;
}

inline Scenario parse_scenario_text(const std::string& text,
                                    const std::vector<CatalogEntry>& catalog) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error("scenario is not valid JSON: " + std::string(e.what()),
                          e.byte, 0);
    }
    return parse_scenario(doc, catalog);
}

}  // namespace qlink
