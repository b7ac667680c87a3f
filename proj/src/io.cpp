#include "rarr/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "rarr/cubic.hpp"
#include "rarr/dynamics.hpp"
#include "rarr/emission.hpp"
#include "rarr/error.hpp"
#include "rarr/spectrum.hpp"

namespace rarr {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

// Full-precision number formatting for headers and tables.
std::string fmt(double v, const char* spec = "%.17g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

}  // namespace

KeyValueDoc parse_key_values(std::istream& in) {
    KeyValueDoc doc;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        doc[key] = value;
    }
    return doc;
}

KeyValueDoc parse_key_values_text(const std::string& text) {
    std::istringstream in(text);
    return parse_key_values(in);
}

std::string format_key_values(const KeyValueDoc& doc) {
    std::string out;
    for (const auto& [k, v] : doc) out += k + " = " + v + "\n";
    return out;
}

KeyValueDoc parse_reproducibility_header(std::istream& in) {
    KeyValueDoc doc;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] != '#') break;
        std::string body = trim(line.substr(1));
        if (body.rfind("summary:", 0) == 0 || body.rfind("columns:", 0) == 0 ||
            body.rfind("rarrsim", 0) == 0)
            continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) continue;
        doc[trim(body.substr(0, eq))] = trim(body.substr(eq + 1));
    }
    return doc;
}

std::vector<double> linspace(const GridSpec& g) {
    if (g.count < 2) throw ConfigError("grid count must be at least 2");
    if (!(g.start < g.stop)) throw ConfigError("grid start must be below stop");
    std::vector<double> out(g.count);
    const double step = (g.stop - g.start) / (g.count - 1);
    for (int i = 0; i < g.count; ++i) out[i] = g.start + step * i;
    out.back() = g.stop;
    return out;
}

std::string task_name(Task t) {
    switch (t) {
        case Task::eigen_sweep: return "eigen-sweep";
        case Task::trajectory: return "trajectory";
        case Task::emission_sweep: return "emission-sweep";
        case Task::spectrum: return "spectrum";
        case Task::single_mode: return "single-mode";
    }
    return "?";
}

Task task_from_name(const std::string& name) {
    if (name == "eigen-sweep") return Task::eigen_sweep;
    if (name == "trajectory") return Task::trajectory;
    if (name == "emission-sweep") return Task::emission_sweep;
    if (name == "spectrum") return Task::spectrum;
    if (name == "single-mode") return Task::single_mode;
    throw ConfigError("unknown task '" + name + "'");
}

KeyValueDoc to_key_values(const RunConfig& c) {
    KeyValueDoc doc;
    doc["task"] = task_name(c.task);
    if (c.task == Task::single_mode) {
        for (const auto& [k, v] : to_key_values(c.single)) doc[k] = fmt(v);
    } else {
        for (const auto& [k, v] : to_key_values(c.params)) doc[k] = fmt(v);
    }
    if (c.grid_set) {
        doc["grid_start"] = fmt(c.grid.start);
        doc["grid_stop"] = fmt(c.grid.stop);
        doc["grid_count"] = std::to_string(c.grid.count);
    }
    doc["out"] = c.out;
    doc["format"] = c.format;
    return doc;
}

RunConfig run_config_from_key_values(const KeyValueDoc& doc) {
    RunConfig c;
    auto it = doc.find("task");
    if (it == doc.end()) throw ConfigError("missing required field task");
    c.task = task_from_name(it->second);
    std::map<std::string, std::string> rest(doc.begin(), doc.end());
    if (c.task == Task::single_mode)
        c.single = single_mode_params_from_key_values(rest);
    else
        c.params = system_params_from_key_values(rest);
    if (doc.count("grid_start") || doc.count("grid_stop") || doc.count("grid_count")) {
        auto number = [&](const char* key) {
            auto j = doc.find(key);
            if (j == doc.end()) throw ConfigError(std::string("missing required field ") + key);
            char* end = nullptr;
            const double v = std::strtod(j->second.c_str(), &end);
            if (end == j->second.c_str() || *end != '\0')
                throw ConfigError(std::string("field ") + key + ": not a number");
            return v;
        };
        c.grid.start = number("grid_start");
        c.grid.stop = number("grid_stop");
        c.grid.count = static_cast<int>(number("grid_count"));
        c.grid_set = true;
    }
    if (auto j = doc.find("out"); j != doc.end()) c.out = j->second;
    if (auto j = doc.find("format"); j != doc.end()) c.format = j->second;
    if (c.format != "tab" && c.format != "doc")
        throw ConfigError("format must be 'tab' or 'doc'");
    return c;
}

GridSpec default_grid(Task task, double g_a) {
    switch (task) {
        case Task::eigen_sweep: return {0.0, 3.0 * g_a, 601};
        case Task::trajectory: return {0.0, 100.0 / g_a, 2000};
        case Task::emission_sweep: return {0.0, 3.0 * g_a, 300};
        case Task::spectrum: return {-2.0 * g_a, 2.0 * g_a, 4001};
        case Task::single_mode: return {0.0, 100.0 / g_a, 2000};
    }
    return {0.0, 1.0, 2};
}

RunConfig preset(const std::string& name) {
    RunConfig c;
    SystemParams base;  // g_a = 1, g_b = 0.1 under the g_a = 1 convention
    base.g_a = 1.0;
    base.g_b = 0.1;
    if (name == "fig2") {
        c.task = Task::eigen_sweep;
        c.params = base;
        c.out = "fig2_eigen_sweep.tsv";
    } else if (name == "fig3a" || name == "fig3b") {
        c.task = Task::trajectory;
        c.params = base;
        c.params.delta_omega = (name == "fig3b") ? base.g_a : 0.0;
        c.grid = {0.0, 100.0, 2000};
        c.grid_set = true;
        c.out = name + "_trajectory.tsv";
    } else if (name == "fig4") {
        c.task = Task::emission_sweep;
        c.params = base;
        c.params.gamma = 0.05;
        c.params.kappa = 0.07;
        c.grid = {0.0, 3.0, 300};
        c.grid_set = true;
        c.out = "fig4_emission_sweep.tsv";
    } else if (name == "fig5-raman" || name == "fig5-rarr") {
        c.task = Task::spectrum;
        c.params = base;
        c.params.gamma = 0.05;
        c.params.kappa = 0.07;
        c.params.delta_omega = (name == "fig5-rarr") ? base.g_a : 0.0;
        c.out = name + "_spectrum.tsv";
    } else {
        throw ConfigError("unknown preset '" + name + "'");
    }
    if (!c.grid_set) {
        c.grid = default_grid(c.task, 1.0);
        c.grid_set = true;
    }
    return c;
}

std::vector<std::string> preset_names() {
    return {"fig2", "fig3a", "fig3b", "fig4", "fig5-raman", "fig5-rarr"};
}

namespace {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void write_tab(std::ostream& os, const RunConfig& config, const Table& table,
               const KeyValueDoc& summary) {
    os << "# rarrsim " << task_name(config.task) << "\n";
    os << "# artifact_version = " << kArtifactVersion << "\n";
    for (const auto& [k, v] : to_key_values(config)) os << "# " << k << " = " << v << "\n";
    for (const auto& [k, v] : summary) os << "# summary: " << k << " = " << v << "\n";
    os << "# columns:";
    for (const auto& c : table.columns) os << " " << c;
    os << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "\t" : "") << fmt(row[i], "%.12g");
        os << "\n";
    }
}

void write_doc(std::ostream& os, const RunConfig& config, const Table& table,
               const KeyValueDoc& summary) {
    nlohmann::json j;
    j["artifact_version"] = kArtifactVersion;
    j["config"] = to_key_values(config);
    j["columns"] = table.columns;
    j["rows"] = table.rows;
    if (!summary.empty()) j["summary"] = summary;
    os << j.dump(2) << "\n";
}

void emit(const RunConfig& config, const Table& table, const KeyValueDoc& summary) {
    const bool doc = config.format == "doc";
    if (config.out == "-") {
        doc ? write_doc(std::cout, config, table, summary)
            : write_tab(std::cout, config, table, summary);
        return;
    }
    std::ofstream os(config.out);
    if (!os) throw ConfigError("cannot open output file '" + config.out + "'");
    doc ? write_doc(os, config, table, summary) : write_tab(os, config, table, summary);
    if (!summary.empty() && !doc) {
        std::ofstream ss(config.out + ".summary");
        if (!ss) throw ConfigError("cannot open output file '" + config.out + ".summary'");
        ss << format_key_values(summary);
    }
}

Table eigen_sweep_table(const SystemParams& p, const std::vector<double>& grid) {
    Table t;
    t.columns = {"delta_omega", "re_lambda1", "im_lambda1", "re_lambda2",
                 "im_lambda2",  "re_lambda3", "im_lambda3"};
    const auto sweep = sweep_eigenvalues(p, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& l = sweep[i].lambdas;
        t.rows.push_back({grid[i], l[0].real(), l[0].imag(), l[1].real(), l[1].imag(),
                          l[2].real(), l[2].imag()});
    }
    return t;
}

Table trajectory_table(const std::vector<TrajectorySample>& samples, bool with_f) {
    Table t;
    t.columns = {"t", "re_E", "im_E", "re_G", "im_G"};
    if (with_f) {
        t.columns.push_back("re_F");
        t.columns.push_back("im_F");
    }
    t.columns.insert(t.columns.end(), {"occ_E", "occ_G"});
    if (with_f) t.columns.push_back("occ_F");
    t.columns.push_back("norm");
    for (const auto& s : samples) {
        std::vector<double> row = {s.t, s.amp_E.real(), s.amp_E.imag(), s.amp_G.real(),
                                   s.amp_G.imag()};
        if (with_f) {
            row.push_back(s.amp_F.real());
            row.push_back(s.amp_F.imag());
        }
        row.push_back(s.occ_E);
        row.push_back(s.occ_G);
        if (with_f) row.push_back(s.occ_F);
        row.push_back(s.norm);
        t.rows.push_back(std::move(row));
    }
    return t;
}

void append_peaks(KeyValueDoc& summary, const std::string& prefix,
                  const std::vector<Peak>& peaks) {
    summary[prefix + "_count"] = std::to_string(peaks.size());
    for (std::size_t i = 0; i < peaks.size(); ++i) {
        const std::string base = prefix + "_" + std::to_string(i + 1);
        summary[base + "_position"] = fmt(peaks[i].position);
        summary[base + "_height"] = fmt(peaks[i].height);
    }
}

}  // namespace

std::vector<std::string> run(const RunConfig& config) {
    const ValidationReport report = (config.task == Task::single_mode)
                                        ? validate(config.single)
                                        : validate(config.params);
    if (!report.valid()) throw ValidationError(report.errors().front());

    RunConfig c = config;
    const double g_a = (c.task == Task::single_mode) ? c.single.g_a : c.params.g_a;
    if (!c.grid_set) {
        c.grid = default_grid(c.task, g_a);
        c.grid_set = true;
    }
    const std::vector<double> grid = linspace(c.grid);

    Table table;
    KeyValueDoc summary;
    switch (c.task) {
        case Task::eigen_sweep: {
            table = eigen_sweep_table(c.params, grid);
            break;
        }
        case Task::trajectory: {
            const ResidueSolution sol = solve_two_mode(c.params);
            table = trajectory_table(sample_trajectory(sol, grid), true);
            break;
        }
        case Task::single_mode: {
            const SingleModeSolution sol = solve_single_mode(c.single);
            table = trajectory_table(sample_trajectory(sol, grid), false);
            summary["conformance"] = sol.conformance_note;
            break;
        }
        case Task::emission_sweep: {
            const auto sweep = sweep_emission(c.params, grid);
            table.columns = {"delta_omega", "p1", "p2", "p3", "sum"};
            for (const auto& point : sweep) {
                if (!point.probs) continue;  // degenerate point: gap in the table
                table.rows.push_back({point.delta_omega, point.probs->p1, point.probs->p2,
                                      point.probs->p3, point.probs->sum()});
            }
            const auto s = summarize_emission_sweep(sweep);
            for (const auto& [k, v] : to_key_values(s)) summary[k] = fmt(v);
            break;
        }
        case Task::spectrum: {
            const ResidueSolution sol = solve_two_mode(c.params);
            // Each mode is sampled on its own detuning axis relative to its
            // carrier; with the default zero carriers the two coincide.
            const auto s_a = mode_spectrum(sol, CavityMode::a, grid);
            const auto s_b = mode_spectrum(sol, CavityMode::b, grid);
            table.columns = {"delta", "s_a", "s_b", "s_total"};
            const double pref = c.params.kappa / (2.0 * std::numbers::pi);
            for (std::size_t i = 0; i < grid.size(); ++i)
                table.rows.push_back({grid[i], s_a[i], s_b[i], pref * (s_a[i] + s_b[i])});
            append_peaks(summary, "peaks_a", detect_peaks(grid, s_a));
            append_peaks(summary, "peaks_b", detect_peaks(grid, s_b));
            break;
        }
    }
    emit(c, table, summary);
    return report.warnings();
}

}  // namespace rarr
