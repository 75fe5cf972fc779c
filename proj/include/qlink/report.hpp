#pragma once

// Rendering of channel reports: a human-readable table, a flat
// key/value/unit CSV, and JSON carrying exact machine values.
// Human output prints 6 significant digits; CSV and JSON print shortest
// round-trip doubles so quantities survive a parse round trip bit-exactly.

#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <sstream>
#include <string>

#include "qlink/scenario.hpp"

namespace qlink {

enum class OutputFormat { human, csv, json_out };

inline OutputFormat parse_output_format(const std::string& s) {
    if (s == "human") return OutputFormat::human;
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json_out;
    throw parse_error("unknown format \"" + s + "\" (choose human, csv or json)", 0, 0);
}

/// Shortest decimal form that parses back to the same double.
inline std::string format_machine(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

inline std::string format_human(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

inline std::string format_quantity_csv(const Quantity& q) {
    return format_machine(q.value) + "," + std::string(unit_token(q.unit));
}

namespace detail {

inline void csv_row(std::ostringstream& out, const std::string& key, double value,
                    const std::string& unit) {
    out << key << "," << format_machine(value) << "," << unit << "\n";
}

}  // namespace detail

inline std::string render_budget_csv(const ChannelReport& r) {
    std::ostringstream out;
    out << "key,value,unit\n";
    detail::csv_row(out, "total_optical_depth", r.link.total_optical_depth, "1");
    detail::csv_row(out, "survival_probability", r.link.survival_probability, "1");
    for (const auto& seg : r.link.segments) {
        const std::string base = "segment." + seg.label;
        detail::csv_row(out, base + ".length", seg.length_m, "m");
        detail::csv_row(out, base + ".optical_depth", seg.optical_depth, "1");
        for (const auto& c : seg.contributions) {
            detail::csv_row(out, base + "." + c.label + ".rate", c.rate_per_s, "s^-1");
            detail::csv_row(out, base + "." + c.label + ".mean_free_path",
                            c.mean_free_path_m, "m");
            detail::csv_row(out, base + "." + c.label + ".optical_depth", c.optical_depth,
                            "1");
        }
    }
    for (std::size_t i = 0; i < r.gravity.size(); ++i) {
        const auto& g = r.gravity[i];
        const std::string base = "gravity." + std::to_string(i) + "." + g.body;
        detail::csv_row(out, base + ".upsilon", g.upsilon, "1");
        detail::csv_row(out, base + ".delta", g.delta, "1");
        if (g.overlap_sq) {
            detail::csv_row(out, base + ".overlap", *g.overlap, "1");
            detail::csv_row(out, base + ".overlap_sq", *g.overlap_sq, "1");
        }
        detail::csv_row(out, base + ".max_coherent_path", g.max_path_bound_m, "m");
        detail::csv_row(out, base + ".path_length", g.path_length_m, "m");
        out << base << ".flag," << to_string(g.flag) << ",\n";
    }
    if (r.teleport) {
        detail::csv_row(out, "teleport.mean_fidelity", r.teleport->mean_fidelity, "1");
        detail::csv_row(out, "teleport.dephase_p", r.teleport->dephase_p, "1");
        out << "teleport.dephasing_source," << r.teleport->dephasing_source << ",\n";
        for (std::size_t k = 0; k < 4; ++k)
            detail::csv_row(out, "teleport.outcome_" + std::to_string(k),
                            r.teleport->outcome_histogram[k], "1");
    }
    if (r.verdict.worst_overlap_sq)
        detail::csv_row(out, "verdict.worst_overlap_sq", *r.verdict.worst_overlap_sq, "1");
    detail::csv_row(out, "verdict.survival_probability", r.verdict.survival_probability, "1");
    out << "verdict.tmax_violation," << (r.verdict.tmax_violation ? "true" : "false") << ",\n";
    return out.str();
}

inline json render_budget_json(const ChannelReport& r) {
    json doc;
    doc["scenario"] = r.scenario_name;
    doc["link"]["total_optical_depth"] = r.link.total_optical_depth;
    doc["link"]["survival_probability"] = r.link.survival_probability;
    doc["link"]["segments"] = json::array();
    for (const auto& seg : r.link.segments) {
        json js;
        js["label"] = seg.label;
        js["length"] = {{"value", seg.length_m}, {"unit", "m"}};
        js["optical_depth"] = seg.optical_depth;
        js["contributions"] = json::array();
        for (const auto& c : seg.contributions) {
            json jc;
            jc["label"] = c.label;
            jc["rate"] = {{"value", c.rate_per_s}, {"unit", "s^-1"}};
            jc["mean_free_path"] = {{"value", c.mean_free_path_m}, {"unit", "m"}};
            jc["optical_depth"] = c.optical_depth;
            jc["non_interacting"] = c.non_interacting;
            js["contributions"].push_back(std::move(jc));
        }
        doc["link"]["segments"].push_back(std::move(js));
    }
    doc["gravity"] = json::array();
    for (const auto& g : r.gravity) {
        json jg;
        jg["body"] = g.body;
        jg["upsilon"] = g.upsilon;
        jg["delta"] = g.delta;
        if (g.overlap_sq) {
            jg["overlap"] = *g.overlap;
            jg["overlap_sq"] = *g.overlap_sq;
            jg["effectively_zero"] = g.effectively_zero;
        }
        jg["max_coherent_path"] = {{"value", g.max_path_bound_m}, {"unit", "m"}};
        jg["path_length"] = {{"value", g.path_length_m}, {"unit", "m"}};
        jg["flag"] = to_string(g.flag);
        doc["gravity"].push_back(std::move(jg));
    }
    if (r.teleport) {
        doc["teleport"]["count"] = r.teleport->count;
        doc["teleport"]["seed"] = r.teleport->seed;
        doc["teleport"]["dephase_p"] = r.teleport->dephase_p;
        doc["teleport"]["dephasing_source"] = r.teleport->dephasing_source;
        doc["teleport"]["mean_fidelity"] = r.teleport->mean_fidelity;
        doc["teleport"]["outcome_histogram"] = r.teleport->outcome_histogram;
    }
    doc["verdict"]["survival_probability"] = r.verdict.survival_probability;
    if (r.verdict.worst_overlap_sq)
        doc["verdict"]["worst_overlap_sq"] = *r.verdict.worst_overlap_sq;
    else
        doc["verdict"]["worst_overlap_sq"] = nullptr;
    doc["verdict"]["tmax_violation"] = r.verdict.tmax_violation;
    return doc;
}

inline std::string render_budget_human(const ChannelReport& r) {
    std::ostringstream out;
    out << "channel report: " << r.scenario_name << "\n";
    for (const auto& seg : r.link.segments) {
        out << "  segment " << seg.label << " (" << format_human(seg.length_m) << " m)\n";
        for (const auto& c : seg.contributions) {
            out << "    " << c.label << ": ";
            if (c.non_interacting) {
                out << "non-interacting\n";
                continue;
            }
            out << "rate " << format_human(c.rate_per_s) << " s^-1, mfp "
                << format_human(c.mean_free_path_m) << " m, tau "
                << format_human(c.optical_depth) << "\n";
        }
        out << "    segment optical depth: " << format_human(seg.optical_depth) << "\n";
    }
    for (const auto& g : r.gravity) {
        out << "  gravity leg (" << g.body << "): upsilon " << format_human(g.upsilon)
            << ", delta " << format_human(g.delta);
        if (g.overlap_sq) {
            out << ", overlap^2 " << format_human(*g.overlap_sq);
            if (g.effectively_zero) out << " (effectively zero)";
        }
        out << "\n    coherence bound " << format_human(g.max_path_bound_m)
            << " m over path " << format_human(g.path_length_m) << " m -> "
            << to_string(g.flag) << "\n";
    }
    if (r.teleport) {
        out << "  teleport trials: " << r.teleport->count << " (seed " << r.teleport->seed
            << "), dephase_p " << format_human(r.teleport->dephase_p) << " ["
            << r.teleport->dephasing_source << "], mean fidelity "
            << format_human(r.teleport->mean_fidelity) << ", outcomes";
        for (int k : r.teleport->outcome_histogram) out << " " << k;
        out << "\n";
    }
    out << "  verdict: survival " << format_human(r.verdict.survival_probability);
    if (r.verdict.worst_overlap_sq)
        out << ", worst overlap^2 " << format_human(*r.verdict.worst_overlap_sq);
    out << ", t_max " << (r.verdict.tmax_violation ? "VIOLATED" : "ok") << "\n";
    return out.str();
}

inline std::string render_budget(const ChannelReport& r, OutputFormat fmt) {
    switch (fmt) {
        case OutputFormat::human: return render_budget_human(r);
        case OutputFormat::csv: return render_budget_csv(r);
        case OutputFormat::json_out: return render_budget_json(r).dump(2) + "\n";
    }
    return {};
}

}  // namespace qlink
