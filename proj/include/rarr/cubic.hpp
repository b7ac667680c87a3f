#ifndef RARR_CUBIC_HPP
#define RARR_CUBIC_HPP

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "rarr/params.hpp"

namespace rarr {

using Complex = std::complex<double>;

// Monic cubic p(x) = x^3 + c2 x^2 + c1 x + c0 over the complex numbers.
struct CubicCoefficients {
    Complex c2, c1, c0;

    Complex eval(Complex x) const { return ((x + c2) * x + c1) * x + c0; }
    Complex deriv(Complex x) const { return (3.0 * x + 2.0 * c2) * x + c1; }
    // Magnitude scale used for residual and degeneracy tolerances.
    double scale() const;
};

// The three eigenfrequencies of the two-mode amplitude system. lambdas[i]
// belongs to branch branch_labels[i]; a standalone solve orders them by
// ascending imaginary part with labels {0,1,2}, a sweep keeps each slot
// attached to its branch by nearest-neighbor continuation.
struct EigenTriple {
    std::array<Complex, 3> lambdas{};
    std::array<int, 3> branch_labels{0, 1, 2};
    // Two roots closer than 1e-8 * scale; residue-form dynamics is singular.
    bool degenerate = false;
};

// Coefficient matrix of the slowly varying amplitude system d/dt (C_E, C_G,
// C_F) = M (C_E, C_G, C_F):
//   dC_E/dt = -(Gamma/2) C_E - i g_a C_G - i g_b C_F
//   dC_G/dt = -(kappa/2) C_G - i g_a C_E
//   dC_F/dt = (i delta_omega - kappa/2) C_F - i g_b C_E
std::array<std::array<Complex, 3>, 3> amplitude_matrix(const SystemParams& p);

// Characteristic cubic det(lambda I - M) in monic form,
//   (l+Gamma/2)(l+kappa/2)(l+kappa/2-i dw) + g_a^2 (l+kappa/2-i dw) + g_b^2 (l+kappa/2).
// The lossless specialization is l^3 - i dw l^2 + (g_a^2+g_b^2) l - i g_a^2 dw.
CubicCoefficients characteristic_cubic(const SystemParams& p);

// All three roots, seeded by the closed-form (Cardano) solution and polished
// by Newton iteration until |p(lambda)| <= 1e-12 * scale (hard cap 1e-10 *
// scale, else a NumericalError carrying the residual is thrown).
EigenTriple solve_cubic(const CubicCoefficients& coeffs);

// Eigenvalues along a detuning sweep with continuation-stable branch labels:
// at each grid point the minimum-total-distance pairing against the previous
// point decides which slot each root lands in. Near-ties between genuinely
// different pairings raise a NumericalError asking for grid refinement; ties
// caused by coincident roots (an exact crossing) are resolved
// deterministically instead, since the branch values agree there anyway.
std::vector<EigenTriple> sweep_eigenvalues(const SystemParams& p,
                                           std::span<const double> detuning_grid);

namespace detail {
// Continuation step exposed for tests: relabel `next` against `prev`.
EigenTriple continue_branches(const EigenTriple& prev, const EigenTriple& next);
}  // namespace detail

}  // namespace rarr

#endif
