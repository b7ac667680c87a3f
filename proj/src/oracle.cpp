#include "rarr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rarr/error.hpp"

namespace rarr {

namespace {

constexpr Complex kI{0.0, 1.0};

using State = std::array<Complex, 3>;

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
// b - bhat, the embedded error weights.
constexpr double kE[7] = {71.0 / 57600,  0.0,          -71.0 / 16695, 71.0 / 1920,
                          -17253.0 / 339200, 22.0 / 525, -1.0 / 40};
// Dense-output weights for the fifth interpolation coefficient.
constexpr double kD[7] = {-12715105075.0 / 11282082432.0,
                          0.0,
                          87487479700.0 / 32700410799.0,
                          -10690763975.0 / 1880347072.0,
                          701980252875.0 / 199316789632.0,
                          -1453857185.0 / 822651844.0,
                          69997945.0 / 29380423.0};

struct Stepper {
    int dim;
    std::array<std::array<Complex, 3>, 3> m;

    State deriv(const State& y) const {
        State dy{};
        for (int i = 0; i < dim; ++i) {
            Complex acc = 0.0;
            for (int j = 0; j < dim; ++j) acc += m[i][j] * y[j];
            dy[i] = acc;
        }
        return dy;
    }

    // One embedded step from (t, y, k1 = f(y)); fills y1, k7 = f(y1), the
    // seven stage derivatives, and returns the scaled error estimate.
    double step(const State& y, double h, const State& k1, std::array<State, 7>& k, State& y1,
                double tol) const {
        k[0] = k1;
        for (int s = 1; s < 7; ++s) {
            State ys = y;
            for (int j = 0; j < s; ++j)
                for (int i = 0; i < dim; ++i) ys[i] += h * kA[s][j] * k[j][i];
            k[s] = deriv(ys);
        }
        // Stage 7 is evaluated at the fifth-order solution itself (FSAL).
        y1 = y;
        for (int j = 0; j < 6; ++j)
            for (int i = 0; i < dim; ++i) y1[i] += h * kA[6][j] * k[j][i];
        k[6] = deriv(y1);

        double err2 = 0.0;
        for (int i = 0; i < dim; ++i) {
            Complex e = 0.0;
            for (int s = 0; s < 7; ++s) e += kE[s] * k[s][i];
            const double sc = tol * (1.0 + std::max(std::abs(y[i]), std::abs(y1[i])));
            const double r = std::abs(h * e) / sc;
            err2 += r * r;
        }
        return std::sqrt(err2 / dim);
    }
};

double initial_step(const Stepper& st, const State& y0, double t_end, double tol) {
    const State f0 = st.deriv(y0);
    double ny = 0.0, nf = 0.0;
    for (int i = 0; i < st.dim; ++i) {
        ny = std::max(ny, std::abs(y0[i]));
        nf = std::max(nf, std::abs(f0[i]));
    }
    double h = (nf > 1e-30) ? 0.01 * (ny + 1.0) / nf : 1e-3 * t_end;
    h = std::min(h, t_end);
    // One explicit Euler probe to bound the second derivative.
    State y1 = y0;
    for (int i = 0; i < st.dim; ++i) y1[i] += h * f0[i];
    const State f1 = st.deriv(y1);
    double d2 = 0.0;
    for (int i = 0; i < st.dim; ++i) d2 = std::max(d2, std::abs(f1[i] - f0[i]) / h);
    if (d2 > 1e-30) h = std::min(h, std::pow(tol / d2, 0.2));
    return std::min(h, t_end);
}

}  // namespace

OdeSystem two_mode_system(const SystemParams& p) {
    OdeSystem s;
    s.dimension = 3;
    s.matrix = {{{-p.gamma / 2.0, -kI * p.g_a, -kI * p.g_b},
                 {-kI * p.g_a, -p.kappa / 2.0, 0.0},
                 {-kI * p.g_b, 0.0, kI * p.delta_omega - p.kappa / 2.0}}};
    s.initial_state = {1.0, 0.0, 0.0};
    return s;
}

OdeSystem single_mode_system(const SingleModeParams& p) {
    OdeSystem s;
    s.dimension = 2;
    s.matrix = {{{kI * p.delta_omega_a / 2.0 - p.gamma / 2.0, -kI * p.g_a, 0.0},
                 {-kI * p.g_a, -kI * p.delta_omega_a / 2.0 - p.kappa / 2.0, 0.0},
                 {0.0, 0.0, 0.0}}};
    s.initial_state = {1.0, 0.0, 0.0};
    return s;
}

std::vector<Complex> DenseTrajectory::at(double t) const {
    if (steps_.empty()) throw NumericalError("empty trajectory");
    if (t < 0.0 || t > t_end_ * (1.0 + 1e-12))
        throw NumericalError("dense evaluation outside [0, t_end]");
    t = std::min(t, t_end_);
    // Binary search for the step containing t.
    std::size_t lo = 0, hi = steps_.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (t < steps_[mid].t0 + steps_[mid].h)
            hi = mid;
        else
            lo = mid + 1;
    }
    const Step& s = steps_[lo];
    const double th = (t - s.t0) / s.h;
    const double th1 = 1.0 - th;
    std::vector<Complex> y(dimension_);
    for (int i = 0; i < dimension_; ++i) {
        const auto& r = s.rcont[i];
        y[i] = r[0] + th * (r[1] + th1 * (r[2] + th * (r[3] + th1 * r[4])));
    }
    return y;
}

DenseTrajectory integrate(const OdeSystem& system, double t_end, double tolerance) {
    if (system.dimension != 2 && system.dimension != 3)
        throw NumericalError("OdeSystem dimension must be 2 or 3");
    if (!(t_end > 0.0)) throw NumericalError("t_end must be positive");
    if (!(tolerance >= 1e-14 && tolerance <= 1e-6))
        throw NumericalError("tolerance must lie in [1e-14, 1e-6]");

    // The per-step controller runs well below the requested tolerance so the
    // accumulated error over a long horizon still respects it.
    const double step_tolerance = tolerance / 64.0;
    const Stepper st{system.dimension, system.matrix};
    State y = system.initial_state;
    State k1 = st.deriv(y);
    double t = 0.0;
    double h = initial_step(st, y, t_end, step_tolerance);

    DenseTrajectory traj;
    traj.dimension_ = system.dimension;
    traj.t_end_ = t_end;

    std::array<State, 7> k;
    State y1;
    while (t < t_end) {
        h = std::min(h, t_end - t);
        if (h < 1e-14 * std::max(1.0, t_end)) {
            std::ostringstream os;
            os << "step size underflow at t = " << t;
            throw NumericalError(os.str());
        }
        const double err = st.step(y, h, k1, k, y1, step_tolerance);
        if (err <= 1.0) {
            DenseTrajectory::Step rec;
            rec.t0 = t;
            rec.h = h;
            for (int i = 0; i < st.dim; ++i) {
                const Complex ydiff = y1[i] - y[i];
                const Complex bspl = h * k[0][i] - ydiff;
                Complex r5 = 0.0;
                for (int s = 0; s < 7; ++s) r5 += kD[s] * k[s][i];
                rec.rcont[i] = {y[i], ydiff, bspl, ydiff - h * k[6][i] - bspl, h * r5};
            }
            traj.steps_.push_back(rec);
            t += h;
            y = y1;
            k1 = k[6];  // FSAL
        }
        const double factor =
            std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
        h *= factor;
    }
    return traj;
}

std::vector<Complex> integrate_fixed_step(const OdeSystem& system, double t_end, int n_steps) {
    if (system.dimension != 2 && system.dimension != 3)
        throw NumericalError("OdeSystem dimension must be 2 or 3");
    if (n_steps < 1) throw NumericalError("n_steps must be positive");
    const Stepper st{system.dimension, system.matrix};
    const double h = t_end / n_steps;
    State y = system.initial_state;
    State k1 = st.deriv(y);
    std::array<State, 7> k;
    State y1;
    for (int n = 0; n < n_steps; ++n) {
        st.step(y, h, k1, k, y1, 1.0);
        y = y1;
        k1 = k[6];
    }
    return std::vector<Complex>(y.begin(), y.begin() + st.dim);
}

}  // namespace rarr
