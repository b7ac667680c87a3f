#ifndef RARR_DYNAMICS_HPP
#define RARR_DYNAMICS_HPP

#include <array>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "rarr/cubic.hpp"
#include "rarr/params.hpp"

namespace rarr {

// Closed-form two-mode dynamics: each amplitude is a sum of three
// exponentials, C_K(t) = sum_n residues_K[n] * exp(lambda_n t), with the
// residues fixed by the initial electronic excitation.
struct ResidueSolution {
    SystemParams params;
    EigenTriple eigen;
    std::array<Complex, 3> residues_E{}, residues_G{}, residues_F{};

    Complex amp_E(double t) const;
    Complex amp_G(double t) const;
    Complex amp_F(double t) const;
};

// Residues from the adjugate projection of the initial state onto each
// eigenvector, c_n^(K) = adj(lambda_n I - M)[K,E] / p'(lambda_n); in the
// lossless case this reproduces the textbook prefactors with denominator
// D_n = g_a^2 + g_b^2 + (3 lambda_n - 2 i dw) lambda_n, an identity that is
// verified numerically on every call. Throws NumericalError for a
// degenerate spectrum, where the residue form is invalid.
ResidueSolution solve_two_mode(const SystemParams& p);

// Single-mode closed form in the symmetric rotating frame. The printed
// cos/sin solution is used verbatim when it satisfies C_E(0) = 1 and the
// ODE-implied derivative at t = 0; otherwise the residue form of the 2x2
// system takes over and `conformance_note` says so.
struct SingleModeSolution {
    SingleModeParams params;
    Complex omega_rabi;   // complex oscillation frequency actually in effect
    Complex phase;        // phi of the cosine solution (printed form only)
    bool printed_form = false;
    std::string conformance_note;
    std::array<Complex, 2> lambdas{};
    std::array<Complex, 2> residues_E{}, residues_G{};

    Complex amp_E(double t) const;
    Complex amp_G(double t) const;
};

// Throws NumericalError("degenerate 2x2 spectrum") at critical damping.
SingleModeSolution solve_single_mode(const SingleModeParams& p);

struct TrajectorySample {
    double t = 0.0;
    Complex amp_E{}, amp_G{}, amp_F{};
    double occ_E = 0.0, occ_G = 0.0, occ_F = 0.0;
    double norm = 0.0;
};

// Pointwise evaluation of the residue sums on a nonnegative monotone grid.
std::vector<TrajectorySample> sample_trajectory(const ResidueSolution& sol,
                                                std::span<const double> time_grid);
std::vector<TrajectorySample> sample_trajectory(const SingleModeSolution& sol,
                                                std::span<const double> time_grid);

}  // namespace rarr

#endif
