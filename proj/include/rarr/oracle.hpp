#ifndef RARR_ORACLE_HPP
#define RARR_ORACLE_HPP

#include <array>
#include <complex>
#include <vector>

#include "rarr/params.hpp"

namespace rarr {

using Complex = std::complex<double>;

// Linear amplitude ODE dC/dt = M C with the fixed initial excitation on the
// electronic state. Dimension 2 covers the single-mode cavity, 3 the two-mode
// cavity; only the top-left dimension x dimension block of `matrix` is read.
struct OdeSystem {
    int dimension = 3;
    std::array<std::array<Complex, 3>, 3> matrix{};
    std::array<Complex, 3> initial_state{1.0, 0.0, 0.0};
};

// Amplitude system of the two-mode cavity, assembled directly from the
// equations of motion. Kept textually separate from the eigensolver route so
// the two paths can check each other.
OdeSystem two_mode_system(const SystemParams& p);

// Single-mode system in the symmetric rotating frame, where both amplitudes
// share the envelope exp(-(gamma+kappa) t / 4):
//   dC_E/dt = (+i dwa/2 - gamma/2) C_E - i g_a C_G
//   dC_G/dt = (-i dwa/2 - kappa/2) C_G - i g_a C_E
OdeSystem single_mode_system(const SingleModeParams& p);

// Dense-output trajectory from an adaptive Dormand-Prince 5(4) integration;
// evaluable at any t in [0, t_end] through the pair's quartic interpolant.
class DenseTrajectory {
  public:
    std::vector<Complex> at(double t) const;
    double t_end() const { return t_end_; }
    std::size_t steps() const { return steps_.size(); }

  private:
    struct Step {
        double t0, h;
        // Interpolant coefficients per component (Hairer's rcont1..rcont5).
        std::array<std::array<Complex, 5>, 3> rcont;
    };
    int dimension_ = 0;
    double t_end_ = 0.0;
    std::vector<Step> steps_;
    friend DenseTrajectory integrate(const OdeSystem&, double, double);
};

// Adaptive integration to t_end with relative error control at `tolerance`
// (accepted range [1e-14, 1e-6]). Deterministic for fixed inputs; throws
// NumericalError on step-size underflow, reporting the time of failure.
DenseTrajectory integrate(const OdeSystem& system, double t_end, double tolerance);

// Fixed-step Dormand-Prince run used for order-verification tests; returns
// the state at t_end after n_steps equal steps.
std::vector<Complex> integrate_fixed_step(const OdeSystem& system, double t_end, int n_steps);

}  // namespace rarr

#endif
