#include "rarr/emission.hpp"

#include <cmath>
#include <limits>

#include "rarr/error.hpp"

namespace rarr {

namespace {

constexpr double kDenominatorTol = 1e-12;

// int_0^T |C(t)|^2 dt for C(t) = sum_n c_n exp(lambda_n t), via
// int_0^T exp((l_n + conj(l_m)) t) dt summed over all nine residue pairs.
double integrated_occupation(const std::array<Complex, 3>& residues,
                             const std::array<Complex, 3>& lambdas, double t_end) {
    const bool to_infinity = std::isinf(t_end);
    Complex acc = 0.0;
    for (int n = 0; n < 3; ++n) {
        for (int m = 0; m < 3; ++m) {
            const Complex weight = residues[n] * std::conj(residues[m]);
            if (weight == 0.0) continue;
            const Complex s = lambdas[n] + std::conj(lambdas[m]);
            if (to_infinity) {
                if (s.real() >= 0.0 || std::abs(s) < kDenominatorTol)
                    throw NumericalError(
                        "non-decaying amplitude component: total emission probability "
                        "diverges");
                acc += -weight / s;
            } else if (std::abs(s) < kDenominatorTol) {
                acc += weight * t_end;
            } else {
                acc += weight * (std::exp(s * t_end) - 1.0) / s;
            }
        }
    }
    return acc.real();
}

}  // namespace

bool EmissionProbabilities::total() const { return std::isinf(t); }

EmissionProbabilities emission_probabilities(const ResidueSolution& sol,
                                             const SystemParams& p, double t) {
    if (std::isinf(t) && p.gamma == 0.0 && p.kappa == 0.0)
        throw NumericalError("no decay channels: total probabilities undefined");
    if (!(t >= 0.0)) throw NumericalError("time horizon must be nonnegative");

    EmissionProbabilities out;
    out.t = t;
    out.p1 = p.gamma * integrated_occupation(sol.residues_E, sol.eigen.lambdas, t);
    out.p2 = p.kappa * integrated_occupation(sol.residues_G, sol.eigen.lambdas, t);
    out.p3 = p.kappa * integrated_occupation(sol.residues_F, sol.eigen.lambdas, t);
    return out;
}

std::vector<EmissionSweepPoint> sweep_emission(const SystemParams& p,
                                               std::span<const double> detuning_grid) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<EmissionSweepPoint> out;
    out.reserve(detuning_grid.size());
    SystemParams q = p;
    for (double dw : detuning_grid) {
        q.delta_omega = dw;
        EmissionSweepPoint point;
        point.delta_omega = dw;
        try {
            const ResidueSolution sol = solve_two_mode(q);
            point.probs = emission_probabilities(sol, q, inf);
        } catch (const NumericalError& e) {
            point.note = e.what();
        }
        out.push_back(point);
    }
    return out;
}

EmissionSweepSummary summarize_emission_sweep(std::span<const EmissionSweepPoint> sweep) {
    EmissionSweepSummary s;
    bool any = false;
    double best_zero_distance = std::numeric_limits<double>::infinity();
    for (const auto& point : sweep) {
        if (!point.probs) continue;
        if (!any || point.probs->p3 > s.peak_p3) {
            s.peak_p3 = point.probs->p3;
            s.peak_delta_omega = point.delta_omega;
        }
        if (std::abs(point.delta_omega) < best_zero_distance) {
            best_zero_distance = std::abs(point.delta_omega);
            s.p3_at_raman = point.probs->p3;
        }
        any = true;
    }
    if (!any) throw NumericalError("emission sweep contains no valid points");
    s.enhancement = (s.p3_at_raman > 0.0) ? s.peak_p3 / s.p3_at_raman : 0.0;
    return s;
}

std::map<std::string, double> to_key_values(const EmissionSweepSummary& s) {
    return {{"peak_delta_omega", s.peak_delta_omega},
            {"peak_p3", s.peak_p3},
            {"p3_at_raman", s.p3_at_raman},
            {"enhancement", s.enhancement}};
}

}  // namespace rarr
