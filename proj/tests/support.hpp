// Shared test-side oracles: random parameter families, quadrature of oracle
// trajectories, and the truncated [0,T]^2 spectrum quadrature. Everything
// here is independent of the closed-form residue path it is used to check.
#ifndef RARR_TESTS_SUPPORT_HPP
#define RARR_TESTS_SUPPORT_HPP

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "rarr/dynamics.hpp"
#include "rarr/oracle.hpp"
#include "rarr/params.hpp"
#include "rarr/spectrum.hpp"

namespace rarr::testing {

inline std::vector<double> uniform_grid(double start, double stop, int count) {
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i)
        g[i] = start + (stop - start) * i / (count - 1);
    return g;
}

// Random valid two-mode parameter set, away from degenerate spectra.
inline SystemParams random_system_params(std::mt19937& rng, bool lossless) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (;;) {
        SystemParams p;
        p.g_a = 0.5 + 1.5 * u(rng);
        p.g_b = 0.5 * p.g_a * u(rng);
        p.delta_omega = -2.0 * p.g_a + 4.0 * p.g_a * u(rng);
        if (!lossless) {
            p.gamma = 0.02 + 0.18 * u(rng);
            p.kappa = 0.02 + 0.18 * u(rng);
        }
        const EigenTriple t = solve_cubic(characteristic_cubic(p));
        if (!t.degenerate) return p;
    }
}

inline SingleModeParams random_single_mode_params(std::mt19937& rng, bool lossless) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    SingleModeParams p;
    p.g_a = 0.5 + 1.5 * u(rng);
    p.delta_omega_a = -p.g_a + 2.0 * p.g_a * u(rng);
    if (!lossless) {
        p.gamma = 0.02 + 0.18 * u(rng);
        p.kappa = 0.02 + 0.18 * u(rng);
    }
    return p;
}

// Composite Simpson of |C_k(t)|^2 over [0, T] from a dense oracle trajectory.
inline double simpson_occupation(const DenseTrajectory& traj, int component, double t_end,
                                 int n) {
    if (n % 2) ++n;
    const double h = t_end / n;
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * std::norm(traj.at(i * h)[component]);
    }
    return acc * h / 3.0;
}

// Truncated spectrum quadrature: the double integral of
// conj(C(t)) C(t') exp(-i delta (t - t')) over [0,T]^2, evaluated with a
// tensor-product Simpson rule. The tensor weights make the double sum equal
// |sum_i w_i C(t_i) exp(i delta t_i)|^2 exactly, which is how it is computed;
// spectrum_quadrature_literal below keeps the raw double loop for checking
// that step.
class TruncatedSpectrumQuadrature {
  public:
    // Amplitudes are sampled once on the finest grid (n_max panels); coarser
    // rules reuse every stride-th sample.
    TruncatedSpectrumQuadrature(const ResidueSolution& sol, CavityMode mode, double t_max,
                                int n_max)
        : t_max_(t_max), n_max_(n_max), samples_(n_max + 1) {
        const double h = t_max / n_max;
        for (int i = 0; i <= n_max; ++i) {
            const double t = i * h;
            samples_[i] = (mode == CavityMode::a) ? sol.amp_G(t) : sol.amp_F(t);
        }
    }

    double value(double delta, int n) const {
        const int stride = n_max_ / n;
        const double h = t_max_ / n;
        std::complex<double> f = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            f += w * samples_[i * stride] * std::polar(1.0, delta * (i * h));
        }
        f *= h / 3.0;
        return std::norm(f);
    }

    // Doubles the grid until two successive rules agree to rel_tol / 4.
    double converged_value(double delta, int n_start, double rel_tol) const {
        int n = n_start;
        double prev = value(delta, n);
        while (n < n_max_) {
            n *= 2;
            const double next = value(delta, n);
            if (std::abs(next - prev) <= 0.25 * rel_tol * std::abs(next)) return next;
            prev = next;
        }
        return prev;
    }

  private:
    double t_max_;
    int n_max_;
    std::vector<std::complex<double>> samples_;
};

// Literal O(n^2) evaluation of the same tensor-product rule.
inline double spectrum_quadrature_literal(const ResidueSolution& sol, CavityMode mode,
                                          double delta, double t_max, int n) {
    if (n % 2) ++n;
    const double h = t_max / n;
    std::vector<std::complex<double>> c(n + 1);
    for (int i = 0; i <= n; ++i)
        c[i] = (mode == CavityMode::a) ? sol.amp_G(i * h) : sol.amp_F(i * h);
    std::complex<double> acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double wi = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        for (int j = 0; j <= n; ++j) {
            const double wj = (j == 0 || j == n) ? 1.0 : (j % 2 ? 4.0 : 2.0);
            acc += wi * wj * std::conj(c[i]) * c[j] *
                   std::polar(1.0, -delta * (i * h - j * h));
        }
    }
    return (acc * h * h / 9.0).real();
}

}  // namespace rarr::testing

#endif
