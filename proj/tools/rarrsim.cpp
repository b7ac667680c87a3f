// Command-line front end: one subcommand per compute task plus `preset`,
// which runs a published figure configuration.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rarr/error.hpp"
#include "rarr/io.hpp"

namespace {

struct Overrides {
    std::optional<double> g_a, g_b, delta_omega, gamma, kappa, omega_a, omega_b;
    std::optional<std::string> grid, out, format, config_path;
    bool print_config = false;
};

void add_common_flags(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--config", o.config_path, "key-value configuration file");
    cmd->add_option("--out", o.out, "output path ('-' for stdout)");
    cmd->add_option("--format", o.format, "output format: tab | doc");
    cmd->add_option("--grid", o.grid, "task axis as <start>:<stop>:<count>");
    cmd->add_option("--g-a", o.g_a, "coupling to mode a");
    cmd->add_option("--g-b", o.g_b, "coupling to mode b");
    cmd->add_option("--delta-omega", o.delta_omega,
                    "detuning (Raman detuning, or cavity-atom detuning for single-mode)");
    cmd->add_option("--gamma", o.gamma, "atomic decay rate");
    cmd->add_option("--kappa", o.kappa, "cavity damping rate");
    cmd->add_option("--omega-a", o.omega_a, "carrier frequency of mode a");
    cmd->add_option("--omega-b", o.omega_b, "carrier frequency of mode b");
    cmd->add_flag("--print-config", o.print_config,
                  "print the resolved configuration instead of running");
}

rarr::GridSpec parse_grid(const std::string& text) {
    rarr::GridSpec g;
    char tail = '\0';
    if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &g.start, &g.stop, &g.count, &tail) != 3)
        throw rarr::ConfigError("grid must be <start>:<stop>:<count>, got '" + text + "'");
    return g;
}

rarr::RunConfig assemble(rarr::Task task, const Overrides& o) {
    rarr::RunConfig c;
    if (o.config_path) {
        std::ifstream in(*o.config_path);
        if (!in) throw rarr::ConfigError("cannot read config file '" + *o.config_path + "'");
        auto doc = rarr::parse_key_values(in);
        doc["task"] = rarr::task_name(task);
        c = rarr::run_config_from_key_values(doc);
    } else {
        c.task = task;
        if (task != rarr::Task::single_mode) {
            // Require the couplings explicitly when no config file is given.
            if (!o.g_a) throw rarr::ConfigError("missing required field g_a");
            if (!o.g_b) throw rarr::ConfigError("missing required field g_b");
        } else if (!o.g_a) {
            throw rarr::ConfigError("missing required field g_a");
        }
    }
    if (o.g_a) c.params.g_a = c.single.g_a = *o.g_a;
    if (o.g_b) c.params.g_b = *o.g_b;
    if (o.delta_omega) c.params.delta_omega = c.single.delta_omega_a = *o.delta_omega;
    if (o.gamma) c.params.gamma = c.single.gamma = *o.gamma;
    if (o.kappa) c.params.kappa = c.single.kappa = *o.kappa;
    if (o.omega_a) c.params.omega_a = *o.omega_a;
    if (o.omega_b) c.params.omega_b = *o.omega_b;
    if (o.grid) {
        c.grid = parse_grid(*o.grid);
        c.grid_set = true;
    }
    if (o.out) c.out = *o.out;
    if (o.format) c.format = *o.format;
    return c;
}

int execute(const rarr::RunConfig& config, bool print_config) {
    if (print_config) {
        std::cout << rarr::format_key_values(rarr::to_key_values(config));
        return 0;
    }
    for (const auto& w : rarr::run(config)) std::cerr << "warning: " << w << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rarrsim: dynamics, emission and spectra of a vibronic emitter in a "
                 "lossy two-mode cavity"};
    app.require_subcommand(1);

    const struct {
        const char* name;
        rarr::Task task;
        const char* help;
    } tasks[] = {
        {"eigen-sweep", rarr::Task::eigen_sweep,
         "eigenfrequency branches across a detuning grid"},
        {"trajectory", rarr::Task::trajectory, "two-mode amplitudes and occupations over time"},
        {"emission-sweep", rarr::Task::emission_sweep,
         "total channel emission probabilities across a detuning grid"},
        {"spectrum", rarr::Task::spectrum, "spontaneous-emission spectrum of the cavity output"},
        {"single-mode", rarr::Task::single_mode, "single-mode cavity amplitudes over time"},
    };

    Overrides task_overrides[5];
    CLI::App* subcommands[5];
    for (int i = 0; i < 5; ++i) {
        subcommands[i] = app.add_subcommand(tasks[i].name, tasks[i].help);
        add_common_flags(subcommands[i], task_overrides[i]);
    }

    std::string preset_name;
    Overrides preset_overrides;
    CLI::App* preset_cmd = app.add_subcommand("preset", "run a published figure configuration");
    preset_cmd->add_option("name", preset_name, "one of: fig2 fig3a fig3b fig4 fig5-raman fig5-rarr")
        ->required();
    add_common_flags(preset_cmd, preset_overrides);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (preset_cmd->parsed()) {
            rarr::RunConfig c = rarr::preset(preset_name);
            const Overrides& o = preset_overrides;
            if (o.g_a) c.params.g_a = *o.g_a;
            if (o.g_b) c.params.g_b = *o.g_b;
            if (o.delta_omega) c.params.delta_omega = *o.delta_omega;
            if (o.gamma) c.params.gamma = *o.gamma;
            if (o.kappa) c.params.kappa = *o.kappa;
            if (o.omega_a) c.params.omega_a = *o.omega_a;
            if (o.omega_b) c.params.omega_b = *o.omega_b;
            if (o.grid) {
                c.grid = parse_grid(*o.grid);
                c.grid_set = true;
            }
            if (o.out) c.out = *o.out;
            if (o.format) c.format = *o.format;
            return execute(c, o.print_config);
        }
        for (int i = 0; i < 5; ++i) {
            if (subcommands[i]->parsed())
                return execute(assemble(tasks[i].task, task_overrides[i]),
                               task_overrides[i].print_config);
        }
        std::cerr << "error: no subcommand given\n";
        return 2;
    } catch (const rarr::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const rarr::ValidationError& e) {
        std::cerr << "error: invalid parameters: " << e.what() << "\n";
        return 3;
    } catch (const rarr::NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
