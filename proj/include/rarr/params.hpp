#ifndef RARR_PARAMS_HPP
#define RARR_PARAMS_HPP

#include <map>
#include <string>
#include <vector>

namespace rarr {

// Parameters of the vibronic emitter in a lossy two-mode cavity.
//
// All rates and frequencies are plain numbers in one shared angular-frequency
// unit chosen by the caller; the convention used by the CLI defaults and by
// every built-in preset is g_a = 1. The a mode is taken exactly resonant with
// the bare electronic transition, so the only detuning entering the two-mode
// dynamics is delta_omega, the offset of the b mode from the Raman resonance.
struct SystemParams {
    double g_a = 1.0;          // electronic transition <-> mode a coupling
    double g_b = 0.1;          // Raman-assisted transition <-> mode b coupling
    double delta_omega = 0.0;  // detuning from exact Raman resonance (signed)
    double gamma = 0.0;        // atomic decay rate
    double kappa = 0.0;        // cavity damping rate (same for both modes)
    double omega_a = 0.0;      // carrier of mode a (spectral axis origin only)
    double omega_b = 0.0;      // carrier of mode b (spectral axis origin only)

    bool lossless() const { return gamma == 0.0 && kappa == 0.0; }
    // Mode spectra can be analyzed independently when the carriers are far
    // apart compared with the strong coupling.
    bool spectrally_separable() const { return omega_a - omega_b > 10.0 * g_a; }

    bool operator==(const SystemParams&) const = default;
};

// Single-mode cavity (one emitter, one mode); the cavity-atom detuning
// delta_omega_a stays a free parameter here.
struct SingleModeParams {
    double g_a = 1.0;
    double delta_omega_a = 0.0;  // omega_a - omega_21 (signed)
    double gamma = 0.0;
    double kappa = 0.0;

    bool lossless() const { return gamma == 0.0 && kappa == 0.0; }

    bool operator==(const SingleModeParams&) const = default;
};

struct ValidationIssue {
    enum class Severity { error, warning };
    Severity severity;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool separable = false;

    bool valid() const {
        for (const auto& i : issues)
            if (i.severity == ValidationIssue::Severity::error) return false;
        return true;
    }
    std::vector<std::string> errors() const;
    std::vector<std::string> warnings() const;
    // One line per issue, prefixed "error:" / "warning:".
    std::string summary() const;
};

// Itemized parameter check; never throws on bad values, only reports them.
// Rejects nonpositive g_a and negative rates; warns when the weak-vibronic
// assumption g_b << g_a or spectral separability fails.
ValidationReport validate(const SystemParams& p);
ValidationReport validate(const SingleModeParams& p);

// Flat key-value serialization; keys match the struct field names.
std::map<std::string, double> to_key_values(const SystemParams& p);
std::map<std::string, double> to_key_values(const SingleModeParams& p);
SystemParams system_params_from_key_values(const std::map<std::string, std::string>& kv);
SingleModeParams single_mode_params_from_key_values(const std::map<std::string, std::string>& kv);

}  // namespace rarr

#endif
