#ifndef RARR_SPECTRUM_HPP
#define RARR_SPECTRUM_HPP

#include <span>
#include <string>
#include <vector>

#include "rarr/dynamics.hpp"
#include "rarr/params.hpp"

namespace rarr {

enum class CavityMode { a, b };

struct Peak {
    double position = 0.0;
    double height = 0.0;
};

// One-sided Fourier transform of a mode amplitude at detuning delta from the
// mode carrier, F(delta) = sum_n c_n / (-lambda_n - i delta); the
// time-integrated spectral density of the mode is |F|^2. Requires a decaying
// solution (all Re lambda < 0).
Complex mode_transform(const ResidueSolution& sol, CavityMode mode, double delta);

// |F(delta)|^2 sampled over a detuning axis. Throws
// NumericalError("non-decaying mode: spectrum undefined") without losses.
std::vector<double> mode_spectrum(const ResidueSolution& sol, CavityMode mode,
                                  std::span<const double> detuning_axis);

// Local maxima above floor_ratio of the component's global maximum and at
// least min_separation samples apart (the higher peak wins a conflict).
std::vector<Peak> detect_peaks(std::span<const double> axis, std::span<const double> density,
                               double floor_ratio = 1e-6, int min_separation = 2);

struct SpectrumGrid {
    std::vector<double> omega_axis;
    std::vector<double> s_a, s_b;      // per-mode densities |F|^2
    std::vector<double> s_total;       // kappa/(2 pi) (s_a + s_b)
    std::vector<Peak> peaks_a, peaks_b;
    std::vector<std::string> warnings;
};

// Total spectrum on an absolute frequency axis, with omega_a and omega_b as
// the component origins. Carries a warning when the parameter set is not
// spectrally separable.
SpectrumGrid full_spectrum(const ResidueSolution& sol, const SystemParams& p,
                           std::span<const double> omega_axis);

// int |F(delta)|^2 d delta over [-half_width, half_width] by adaptive
// Simpson quadrature; kappa/(2 pi) times this equals the mode's total
// emission probability (Parseval).
double integrated_mode_weight(const ResidueSolution& sol, CavityMode mode, double half_width,
                              double rel_tol = 1e-9);

}  // namespace rarr

#endif
