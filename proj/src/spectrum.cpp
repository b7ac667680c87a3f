#include "rarr/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "rarr/error.hpp"

namespace rarr {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_decaying(const ResidueSolution& sol) {
    for (const auto& l : sol.eigen.lambdas)
        if (l.real() >= 0.0)
            throw NumericalError("non-decaying mode: spectrum undefined");
}

const std::array<Complex, 3>& mode_residues(const ResidueSolution& sol, CavityMode mode) {
    return mode == CavityMode::a ? sol.residues_G : sol.residues_F;
}

}  // namespace

Complex mode_transform(const ResidueSolution& sol, CavityMode mode, double delta) {
    const auto& residues = mode_residues(sol, mode);
    Complex acc = 0.0;
    for (int n = 0; n < 3; ++n) acc += residues[n] / (-sol.eigen.lambdas[n] - kI * delta);
    return acc;
}

std::vector<double> mode_spectrum(const ResidueSolution& sol, CavityMode mode,
                                  std::span<const double> detuning_axis) {
    require_decaying(sol);
    std::vector<double> out;
    out.reserve(detuning_axis.size());
    for (double d : detuning_axis) out.push_back(std::norm(mode_transform(sol, mode, d)));
    return out;
}

std::vector<Peak> detect_peaks(std::span<const double> axis, std::span<const double> density,
                               double floor_ratio, int min_separation) {
    std::vector<Peak> peaks;
    if (density.size() < 3 || axis.size() != density.size()) return peaks;
    const double global_max = *std::max_element(density.begin(), density.end());
    if (!(global_max > 0.0)) return peaks;
    const double floor = floor_ratio * global_max;

    std::vector<std::size_t> candidates;
    for (std::size_t i = 1; i + 1 < density.size(); ++i) {
        if (density[i] <= floor) continue;
        if (density[i] > density[i - 1] && density[i] >= density[i + 1]) {
            // Plateau: only its first sample qualifies (strict rise on the left).
            candidates.push_back(i);
        }
    }
    // Enforce the minimum separation, higher peak wins.
    std::vector<std::size_t> kept;
    for (std::size_t c : candidates) {
        if (!kept.empty() && c - kept.back() < static_cast<std::size_t>(min_separation)) {
            if (density[c] > density[kept.back()]) kept.back() = c;
        } else {
            kept.push_back(c);
        }
    }
    peaks.reserve(kept.size());
    for (std::size_t i : kept) peaks.push_back({axis[i], density[i]});
    return peaks;
}

SpectrumGrid full_spectrum(const ResidueSolution& sol, const SystemParams& p,
                           std::span<const double> omega_axis) {
    require_decaying(sol);
    SpectrumGrid grid;
    if (!p.spectrally_separable())
        grid.warnings.push_back(
            "parameter set is not spectrally separable; per-mode components overlap");
    grid.omega_axis.assign(omega_axis.begin(), omega_axis.end());
    grid.s_a.reserve(omega_axis.size());
    grid.s_b.reserve(omega_axis.size());
    grid.s_total.reserve(omega_axis.size());
    const double prefactor = p.kappa / (2.0 * std::numbers::pi);
    for (double w : omega_axis) {
        const double sa = std::norm(mode_transform(sol, CavityMode::a, w - p.omega_a));
        const double sb = std::norm(mode_transform(sol, CavityMode::b, w - p.omega_b));
        grid.s_a.push_back(sa);
        grid.s_b.push_back(sb);
        grid.s_total.push_back(prefactor * (sa + sb));
    }
    grid.peaks_a = detect_peaks(grid.omega_axis, grid.s_a);
    grid.peaks_b = detect_peaks(grid.omega_axis, grid.s_b);
    return grid;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

}  // namespace

double integrated_mode_weight(const ResidueSolution& sol, CavityMode mode, double half_width,
                              double rel_tol) {
    require_decaying(sol);
    const auto f = [&](double d) { return std::norm(mode_transform(sol, mode, d)); };
    // Rough magnitude estimate to turn the relative tolerance into an
    // absolute one: sample the axis coarsely.
    double scale = 0.0;
    const int probes = 512;
    for (int i = 0; i <= probes; ++i) {
        const double d = -half_width + 2.0 * half_width * i / probes;
        scale = std::max(scale, f(d));
    }
    const double tol = std::max(rel_tol * scale * half_width * 1e-3, 1e-300);
    // Integrate in panels so narrow resonances cannot hide from the
    // subdivision heuristic.
    const int panels = 64;
    double acc = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double a = -half_width + 2.0 * half_width * i / panels;
        const double b = -half_width + 2.0 * half_width * (i + 1) / panels;
        const double m = 0.5 * (a + b);
        const double fa = f(a), fm = f(m), fb = f(b);
        const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        acc += adaptive_simpson(f, a, b, fa, fm, fb, whole, tol / panels, 48);
    }
    return acc;
}

}  // namespace rarr
