#include "rarr/params.hpp"

#include <charconv>
#include <cstdlib>
#include <sstream>

#include "rarr/error.hpp"

namespace rarr {

std::vector<std::string> ValidationReport::errors() const {
    std::vector<std::string> out;
    for (const auto& i : issues)
        if (i.severity == ValidationIssue::Severity::error) out.push_back(i.message);
    return out;
}

std::vector<std::string> ValidationReport::warnings() const {
    std::vector<std::string> out;
    for (const auto& i : issues)
        if (i.severity == ValidationIssue::Severity::warning) out.push_back(i.message);
    return out;
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    for (const auto& i : issues)
        os << (i.severity == ValidationIssue::Severity::error ? "error: " : "warning: ")
           << i.message << "\n";
    return os.str();
}

namespace {

void check_rates(ValidationReport& r, double g_a, double gamma, double kappa) {
    using S = ValidationIssue::Severity;
    if (!(g_a > 0.0)) r.issues.push_back({S::error, "g_a must be positive"});
    if (gamma < 0.0) r.issues.push_back({S::error, "gamma must be nonnegative"});
    if (kappa < 0.0) r.issues.push_back({S::error, "kappa must be nonnegative"});
}

}  // namespace

ValidationReport validate(const SystemParams& p) {
    using S = ValidationIssue::Severity;
    ValidationReport r;
    check_rates(r, p.g_a, p.gamma, p.kappa);
    if (p.g_b < 0.0) r.issues.push_back({S::error, "g_b must be nonnegative"});
    if (p.g_a > 0.0 && p.g_b >= 0.5 * p.g_a)
        r.issues.push_back({S::warning, "weak-coupling assumption g_b<<g_a not satisfied"});
    r.separable = p.spectrally_separable();
    if (!r.separable)
        r.issues.push_back(
            {S::warning,
             "spectra not separable (omega_a-omega_b <= 10*g_a); spectral output is "
             "meaningful on per-mode detuning axes only"});
    return r;
}

ValidationReport validate(const SingleModeParams& p) {
    ValidationReport r;
    check_rates(r, p.g_a, p.gamma, p.kappa);
    r.separable = true;
    return r;
}

std::map<std::string, double> to_key_values(const SystemParams& p) {
    return {{"g_a", p.g_a},     {"g_b", p.g_b},       {"delta_omega", p.delta_omega},
            {"gamma", p.gamma}, {"kappa", p.kappa},   {"omega_a", p.omega_a},
            {"omega_b", p.omega_b}};
}

std::map<std::string, double> to_key_values(const SingleModeParams& p) {
    return {{"g_a", p.g_a},
            {"delta_omega_a", p.delta_omega_a},
            {"gamma", p.gamma},
            {"kappa", p.kappa}};
}

namespace {

double parse_number(const std::string& key, const std::string& text) {
    const char* begin = text.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw ConfigError("field " + key + ": not a number: '" + text + "'");
    return v;
}

double require(const std::map<std::string, std::string>& kv, const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw ConfigError("missing required field " + key);
    return parse_number(key, it->second);
}

double get_or(const std::map<std::string, std::string>& kv, const std::string& key,
              double fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    return parse_number(key, it->second);
}

}  // namespace

SystemParams system_params_from_key_values(const std::map<std::string, std::string>& kv) {
    SystemParams p;
    p.g_a = require(kv, "g_a");
    p.g_b = require(kv, "g_b");
    p.delta_omega = get_or(kv, "delta_omega", 0.0);
    p.gamma = get_or(kv, "gamma", 0.0);
    p.kappa = get_or(kv, "kappa", 0.0);
    p.omega_a = get_or(kv, "omega_a", 0.0);
    p.omega_b = get_or(kv, "omega_b", 0.0);
    return p;
}

SingleModeParams single_mode_params_from_key_values(
    const std::map<std::string, std::string>& kv) {
    SingleModeParams p;
    p.g_a = require(kv, "g_a");
    p.delta_omega_a = get_or(kv, "delta_omega_a", 0.0);
    p.gamma = get_or(kv, "gamma", 0.0);
    p.kappa = get_or(kv, "kappa", 0.0);
    return p;
}

}  // namespace rarr
