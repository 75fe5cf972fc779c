// qlink command-line front end.
//
// Subcommands:
//   budget           evaluate a scenario file into a channel report
//   reproduce-paper  recompute the published reference values and check them
//   sweep            vary one numeric scenario field and emit verdict rows
//   spectrum-ingest  validate (and register) a tabulated spectrum CSV
//
// Exit codes: 0 success, 1 reference-case failures, 2 input/validation
// error, 3 numerical non-convergence.
//
// The environment variable QLINK_CATALOG_DIR may point at a directory of
// additional spectrum CSVs; each file registers as a background named after
// its stem.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qlink/refcases.hpp"
#include "qlink/report.hpp"
#include "qlink/scenario.hpp"

namespace {

using namespace qlink;
namespace fs = std::filesystem;

std::vector<CatalogEntry> load_catalog() {
    auto cat = builtin_catalog();
    if (const char* dir = std::getenv("QLINK_CATALOG_DIR")) {
        if (fs::is_directory(dir)) {
            std::vector<fs::path> files;
            for (const auto& e : fs::directory_iterator(dir))
                if (e.path().extension() == ".csv") files.push_back(e.path());
            std::sort(files.begin(), files.end());
            for (const auto& p : files) {
                std::ifstream in(p);
                cat.push_back({RadiationBackground{p.stem().string(), load_solar_spectrum(in)}});
            }
        }
    }
    return cat;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open \"" + path + "\"", 0, 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// A scenario argument is a path, or a bare name resolved against
/// QLINK_CATALOG_DIR as <name>.json.
std::string resolve_scenario_path(const std::string& arg) {
    if (fs::exists(arg)) return arg;
    if (arg.find('/') == std::string::npos) {
        if (const char* dir = std::getenv("QLINK_CATALOG_DIR")) {
            const fs::path candidate = fs::path(dir) / (arg + ".json");
            if (fs::exists(candidate)) return candidate.string();
        }
    }
    return arg;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw parse_error("cannot write \"" + out_path + "\"", 0, 0);
    out << text;
}

int cmd_budget(const std::string& scenario_path, const std::string& format,
               const std::string& out_path) {
    const auto catalog = load_catalog();
    const auto sc = parse_scenario_text(read_file(scenario_path), catalog);
    const auto report = evaluate(sc);
    write_output(render_budget(report, parse_output_format(format)), out_path);
    return 0;
}

int cmd_reproduce(const std::string& case_id, const std::string& format,
                  const std::string& out_path) {
    auto cases = reference_cases();
    std::vector<ReferenceCase> selected;
    if (case_id == "all")
        selected = std::move(cases);
    else
        selected.push_back(find_reference_case(cases, case_id));

    bool all_pass = true;
    std::ostringstream out;
    json jdoc = json::array();

    if (format == "human")
        out << "case                      reference      computed       rel.dev        status\n";
    else if (format == "csv")
        out << "case,description,reference,computed,unit,relative_deviation,tolerance,status\n";

    for (const auto& c : selected) {
        const double computed = c.compute();
        const bool pass = c.passes(computed);
        all_pass = all_pass && pass;
        const double rel_dev =
            c.reference != 0.0 ? (computed - c.reference) / c.reference : computed;

        if (format == "human") {
            out << c.id;
            for (std::size_t i = c.id.size(); i < 26; ++i) out << ' ';
            const auto pad = [&](const std::string& s, std::size_t w) {
                out << s;
                for (std::size_t i = s.size(); i < w; ++i) out << ' ';
            };
            pad(format_human(c.reference), 15);
            pad(format_human(computed), 15);
            pad(format_human(rel_dev), 15);
            out << (pass ? "pass" : "FAIL") << "\n";
        } else if (format == "csv") {
            out << c.id << ",\"" << c.description << "\"," << format_machine(c.reference)
                << "," << format_machine(computed) << "," << c.unit << ","
                << format_machine(rel_dev) << "," << c.tolerance_text() << ","
                << (pass ? "pass" : "FAIL") << "\n";
        } else {
            json jc;
            jc["case"] = c.id;
            jc["description"] = c.description;
            jc["reference"] = c.reference;
            jc["computed"] = computed;
            jc["unit"] = c.unit;
            jc["relative_deviation"] = rel_dev;
            jc["tolerance"] = c.tolerance_text();
            jc["pass"] = pass;
            jdoc.push_back(std::move(jc));
        }
    }
    if (format == "json") out << jdoc.dump(2) << "\n";
    write_output(out.str(), out_path);
    return all_pass ? 0 : 1;
}

int cmd_sweep(const std::string& scenario_path, const std::string& param, double from,
              double to, int steps, const std::string& out_path) {
    if (steps < 1) throw parse_error("--steps must be >= 1", 0, 0);
    const auto catalog = load_catalog();
    json doc;
    try {
        doc = json::parse(read_file(scenario_path));
    } catch (const json::parse_error& e) {
        throw parse_error("scenario is not valid JSON: " + std::string(e.what()), e.byte, 0);
    }

    // Resolve a dotted path with [i] indices down to a json leaf.
    const auto resolve = [&](json& root) -> json* {
        json* node = &root;
        std::istringstream ss(param);
        std::string part;
        while (std::getline(ss, part, '.')) {
            std::string key = part;
            std::optional<std::size_t> index;
            if (const auto bracket = part.find('['); bracket != std::string::npos) {
                if (part.back() != ']')
                    throw parse_error("bad parameter path \"" + param + "\"", 0, 0);
                key = part.substr(0, bracket);
                index = std::stoul(part.substr(bracket + 1, part.size() - bracket - 2));
            }
            if (!node->is_object() || !node->contains(key))
                throw parse_error("parameter path \"" + param + "\" not found at \"" + key +
                                      "\"",
                                  0, 0);
            node = &(*node)[key];
            if (index) {
                if (!node->is_array() || *index >= node->size())
                    throw parse_error("parameter path \"" + param + "\": index out of range",
                                      0, 0);
                node = &(*node)[*index];
            }
        }
        return node;
    };

    struct Row {
        double value;
        double optical_depth;
        Verdict verdict;
    };
    std::vector<Row> rows;
    std::string unit_label = "1";

    for (int i = 0; i < steps; ++i) {
        const double v =
            steps == 1 ? from : from + (to - from) * static_cast<double>(i) / (steps - 1);
        json step_doc = doc;
        json* leaf = resolve(step_doc);
        if (leaf->is_string()) {
            // Keep the field's literal unit token (e.g. "keV" stays keV)
            // so --from/--to are read in the unit the scenario wrote.
            const std::string text = leaf->get<std::string>();
            parse_quantity(text);  // validates
            char* end = nullptr;
            std::strtod(text.c_str(), &end);
            std::string token(end);
            token.erase(0, token.find_first_not_of(" \t"));
            token.erase(token.find_last_not_of(" \t") + 1);
            unit_label = token;
            *leaf = format_machine(v) + " " + unit_label;
        } else if (leaf->is_number()) {
            *leaf = v;
        } else {
            throw parse_error("parameter path \"" + param +
                                  "\" does not address a numeric or quantity field",
                              0, 0);
        }
        const auto sc = parse_scenario(step_doc, catalog);
        const auto rep = evaluate(sc);
        rows.push_back({v, rep.link.total_optical_depth, rep.verdict});
    }

    std::sort(rows.begin(), rows.end(),
              [](const Row& a, const Row& b) { return a.value < b.value; });

    std::ostringstream out;
    out << "param_path,param_value,param_unit,survival_probability,total_optical_depth,"
           "worst_overlap_sq,tmax_violation\n";
    for (const auto& r : rows) {
        out << param << "," << format_machine(r.value) << "," << unit_label << ","
            << format_machine(r.verdict.survival_probability) << ","
            << format_machine(r.optical_depth) << ",";
        if (r.verdict.worst_overlap_sq) out << format_machine(*r.verdict.worst_overlap_sq);
        out << "," << (r.verdict.tmax_violation ? "true" : "false") << "\n";
    }
    write_output(out.str(), out_path);
    return 0;
}

int cmd_spectrum_ingest(const std::string& csv_path, bool validate_only,
                        const std::string& name) {
    std::ifstream in(csv_path, std::ios::binary);
    if (!in) throw parse_error("cannot open \"" + csv_path + "\"", 0, 0);
    const auto table = load_solar_spectrum(in);

    const std::string reg_name =
        !name.empty() ? name : fs::path(csv_path).stem().string();
    std::cout << "samples: " << table.samples.size() << "\n"
              << "span: " << format_human(table.lambda_min_nm()) << " - "
              << format_human(table.lambda_max_nm()) << " nm\n"
              << "integrated irradiance: "
              << format_human(table.integrated_irradiance_W_m2()) << " W m^-2\n";
    if (!validate_only)
        std::cout << "registered as \"" << reg_name
                  << "\" (place the file in QLINK_CATALOG_DIR to use it in scenarios)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"interstellar photonic quantum-channel feasibility toolkit"};
    app.require_subcommand(1);

    std::string scenario_path, format = "human", out_path, case_id = "all";
    std::string param, spectrum_path, spectrum_name;
    double from = 0.0, to = 0.0;
    int steps = 1;
    bool validate_only = false;

    auto* budget = app.add_subcommand("budget", "evaluate a scenario file");
    budget->add_option("scenario", scenario_path, "scenario JSON path")->required();
    budget->add_option("--format", format, "human, csv or json");
    budget->add_option("--out", out_path, "write the report here instead of stdout");

    auto* repro = app.add_subcommand("reproduce-paper",
                                     "recompute published reference values");
    repro->add_option("--case", case_id, "case id, or \"all\"");
    repro->add_option("--format", format, "human, csv or json");
    repro->add_option("--out", out_path, "write the table here instead of stdout");

    auto* sweep = app.add_subcommand("sweep", "vary one scenario field");
    sweep->add_option("scenario", scenario_path, "scenario JSON path")->required();
    sweep->add_option("--vary", param, "dotted field path, e.g. gravity_legs[0].r_receive")
        ->required();
    sweep->add_option("--from", from)->required();
    sweep->add_option("--to", to)->required();
    sweep->add_option("--steps", steps)->required();
    sweep->add_option("--out", out_path, "write the CSV here instead of stdout");

    auto* ingest = app.add_subcommand("spectrum-ingest", "validate a spectrum CSV");
    ingest->add_option("csv", spectrum_path, "spectrum CSV path")->required();
    ingest->add_flag("--validate-only", validate_only, "do not register");
    ingest->add_option("--name", spectrum_name, "catalog name (default: file stem)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (budget->parsed()) return cmd_budget(scenario_path, format, out_path);
        if (repro->parsed()) return cmd_reproduce(case_id, format, out_path);
        if (sweep->parsed())
            return cmd_sweep(scenario_path, param, from, to, steps, out_path);
        if (ingest->parsed())
            return cmd_spectrum_ingest(spectrum_path, validate_only, spectrum_name);
    } catch (const convergence_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
