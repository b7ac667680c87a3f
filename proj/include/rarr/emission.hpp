#ifndef RARR_EMISSION_HPP
#define RARR_EMISSION_HPP

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rarr/dynamics.hpp"
#include "rarr/params.hpp"

namespace rarr {

// First-emission probabilities through the three decay channels: atomic
// decay out of the side of the cavity (p1), the mode-a output (p2) and the
// mode-b output (p3).
struct EmissionProbabilities {
    double p1 = 0.0, p2 = 0.0, p3 = 0.0;
    double t = 0.0;  // time horizon; infinity marks the total probabilities

    double sum() const { return p1 + p2 + p3; }
    bool total() const;
};

// p1 = Gamma int |C_E|^2, p2 = kappa int |C_G|^2, p3 = kappa int |C_F|^2 on
// [0, t], evaluated analytically through the residue double sum. Pass
// t = infinity for the totals; that requires Gamma + kappa > 0.
EmissionProbabilities emission_probabilities(const ResidueSolution& sol,
                                             const SystemParams& p, double t);

struct EmissionSweepPoint {
    double delta_omega = 0.0;
    std::optional<EmissionProbabilities> probs;  // empty on a degenerate point
    std::string note;                            // why the point is a gap
};

// Total probabilities across a detuning grid; degenerate-spectrum points are
// recorded as gaps instead of aborting the sweep.
std::vector<EmissionSweepPoint> sweep_emission(const SystemParams& p,
                                               std::span<const double> detuning_grid);

// Headline numbers of a sweep: where the b-mode output peaks and by how much
// it beats the exact-Raman-resonance value (taken at the grid point nearest
// delta_omega = 0).
struct EmissionSweepSummary {
    double peak_delta_omega = 0.0;
    double peak_p3 = 0.0;
    double p3_at_raman = 0.0;
    double enhancement = 0.0;
};
EmissionSweepSummary summarize_emission_sweep(std::span<const EmissionSweepPoint> sweep);
std::map<std::string, double> to_key_values(const EmissionSweepSummary& s);

}  // namespace rarr

#endif
