#ifndef RARR_IO_HPP
#define RARR_IO_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "rarr/params.hpp"

namespace rarr {

inline constexpr const char* kArtifactVersion = "0.1.0";

// Flat key-value document: one `key = value` per line, `#` starts a comment.
using KeyValueDoc = std::map<std::string, std::string>;

KeyValueDoc parse_key_values(std::istream& in);
KeyValueDoc parse_key_values_text(const std::string& text);
std::string format_key_values(const KeyValueDoc& doc);

// Uniform sample axis with count points from start to stop inclusive.
struct GridSpec {
    double start = 0.0;
    double stop = 1.0;
    int count = 2;
};
std::vector<double> linspace(const GridSpec& g);

enum class Task { eigen_sweep, trajectory, emission_sweep, spectrum, single_mode };
std::string task_name(Task t);
Task task_from_name(const std::string& name);

// One fully specified run: a task, its parameters, the task axis and the
// output destination.
struct RunConfig {
    Task task = Task::trajectory;
    SystemParams params;      // two-mode tasks
    SingleModeParams single;  // single-mode task
    GridSpec grid;
    bool grid_set = false;    // false: use the task default at run time
    std::string out = "-";    // "-" writes to stdout
    std::string format = "tab";  // "tab" | "doc"
};

KeyValueDoc to_key_values(const RunConfig& c);
RunConfig run_config_from_key_values(const KeyValueDoc& doc);

// Default axis of each task under the g_a = 1 convention.
GridSpec default_grid(Task task, double g_a);

// Published parameter sets behind each figure of record:
//   fig2        eigenvalue sweep, g_a/g_b = 10, lossless
//   fig3a/fig3b lossless trajectories at dw = 0 and dw = g_a
//   fig4        emission sweep with Gamma/g_a = 0.05, kappa/g_a = 0.07
//   fig5-raman / fig5-rarr  output spectra at dw = 0 and dw = g_a
RunConfig preset(const std::string& name);
std::vector<std::string> preset_names();

// Executes one task: validates, computes, writes the data file (plus a
// `.summary` key-value file for sweep/spectrum tasks) with a reproducibility
// header that re-parses into the same RunConfig. Returns the warnings issued.
std::vector<std::string> run(const RunConfig& config);

// Reads the `#`-prefixed header block of a tabular output file back into the
// key-value document it echoes.
KeyValueDoc parse_reproducibility_header(std::istream& in);

}  // namespace rarr

#endif
