#include "rarr/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rarr/error.hpp"

namespace rarr {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kResidualTarget = 1e-12;
constexpr double kResidualLimit = 1e-10;
constexpr double kDegeneracyTol = 1e-8;
constexpr double kPairingTieTol = 1e-9;

}  // namespace

double CubicCoefficients::scale() const {
    return std::max({1.0, std::abs(c2), std::abs(c1), std::abs(c0)});
}

std::array<std::array<Complex, 3>, 3> amplitude_matrix(const SystemParams& p) {
    return {{{-p.gamma / 2.0, -kI * p.g_a, -kI * p.g_b},
             {-kI * p.g_a, -p.kappa / 2.0, 0.0},
             {-kI * p.g_b, 0.0, kI * p.delta_omega - p.kappa / 2.0}}};
}

CubicCoefficients characteristic_cubic(const SystemParams& p) {
    const Complex a = p.gamma / 2.0;                         // l + a from the E row
    const Complex b = p.kappa / 2.0;                         // l + b from the G row
    const Complex c = p.kappa / 2.0 - kI * p.delta_omega;    // l + c from the F row
    const double ga2 = p.g_a * p.g_a;
    const double gb2 = p.g_b * p.g_b;
    // (l+a)(l+b)(l+c) + ga2 (l+c) + gb2 (l+b)
    CubicCoefficients k;
    k.c2 = a + b + c;
    k.c1 = a * b + a * c + b * c + ga2 + gb2;
    k.c0 = a * b * c + ga2 * c + gb2 * b;
    return k;
}

namespace {

// Closed-form roots of the depressed cubic x^3 + p x + q.
std::array<Complex, 3> cardano(Complex p, Complex q) {
    if (p == 0.0 && q == 0.0) return {0.0, 0.0, 0.0};
    const Complex disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    // Pick the larger branch for the cube-root argument to avoid cancellation.
    Complex s = -q / 2.0 + disc;
    if (std::abs(-q / 2.0 - disc) > std::abs(s)) s = -q / 2.0 - disc;
    const Complex u = std::pow(s, 1.0 / 3.0);
    const Complex v = (u == 0.0) ? Complex{0.0} : -p / (3.0 * u);
    const Complex w{-0.5, std::sqrt(3.0) / 2.0};  // primitive cube root of unity
    return {u + v, w * u + std::conj(w) * v, std::conj(w) * u + w * v};
}

}  // namespace

EigenTriple solve_cubic(const CubicCoefficients& k) {
    const Complex shift = k.c2 / 3.0;
    const Complex p = k.c1 - k.c2 * k.c2 / 3.0;
    const Complex q = 2.0 * k.c2 * k.c2 * k.c2 / 27.0 - k.c2 * k.c1 / 3.0 + k.c0;

    std::array<Complex, 3> roots = cardano(p, q);
    const double tol = kResidualTarget * k.scale();
    for (auto& r : roots) {
        r -= shift;
        double residual = std::abs(k.eval(r));
        for (int it = 0; it < 50 && residual > tol; ++it) {
            const Complex dp = k.deriv(r);
            if (dp == 0.0) break;  // inflection point; multiple-root territory
            const Complex next = r - k.eval(r) / dp;
            const double next_residual = std::abs(k.eval(next));
            if (next_residual >= residual) break;  // converged to rounding floor
            r = next;
            residual = next_residual;
        }
        if (!(residual <= kResidualLimit * k.scale())) {  // also catches NaN input
            std::ostringstream os;
            os << "cubic root polishing did not converge: residual " << residual
               << " exceeds " << kResidualLimit * k.scale();
            throw NumericalError(os.str());
        }
    }

    std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
        if (a.imag() != b.imag()) return a.imag() < b.imag();
        return a.real() < b.real();
    });

    EigenTriple out;
    out.lambdas = roots;
    out.branch_labels = {0, 1, 2};
    double root_scale = 1.0;
    for (const auto& r : roots) root_scale = std::max(root_scale, std::abs(r));
    double min_gap = std::abs(roots[1] - roots[0]);
    min_gap = std::min(min_gap, std::abs(roots[2] - roots[1]));
    min_gap = std::min(min_gap, std::abs(roots[2] - roots[0]));
    out.degenerate = min_gap <= kDegeneracyTol * root_scale;
    return out;
}

namespace detail {

EigenTriple continue_branches(const EigenTriple& prev, const EigenTriple& next) {
    static constexpr std::array<std::array<int, 3>, 6> perms = {
        {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

    double best_cost = 0.0, second_cost = 0.0;
    int best = -1, second = -1;
    for (int pi = 0; pi < 6; ++pi) {
        double cost = 0.0;
        for (int i = 0; i < 3; ++i) cost += std::abs(next.lambdas[perms[pi][i]] - prev.lambdas[i]);
        if (best < 0 || cost < best_cost) {
            second = best;
            second_cost = best_cost;
            best = pi;
            best_cost = cost;
        } else if (second < 0 || cost < second_cost) {
            second = pi;
            second_cost = cost;
        }
    }

    double scale = 1.0;
    for (int i = 0; i < 3; ++i)
        scale = std::max({scale, std::abs(prev.lambdas[i]), std::abs(next.lambdas[i])});
    if (second >= 0 && second_cost - best_cost < kPairingTieTol * scale) {
        // A tie is harmless when it comes from coincident roots (an exact
        // crossing): the competing assignments then carry identical values.
        // Otherwise the grid is too coarse to identify branches.
        auto min_pair_gap = [](const EigenTriple& t) {
            return std::min({std::abs(t.lambdas[1] - t.lambdas[0]),
                             std::abs(t.lambdas[2] - t.lambdas[1]),
                             std::abs(t.lambdas[2] - t.lambdas[0])});
        };
        const bool coincident = min_pair_gap(prev) <= kDegeneracyTol * scale ||
                                min_pair_gap(next) <= kDegeneracyTol * scale;
        if (!coincident)
            throw NumericalError(
                "ambiguous branch pairing between consecutive sweep points; refine the "
                "detuning grid");
    }

    EigenTriple out = next;
    for (int i = 0; i < 3; ++i) {
        out.lambdas[i] = next.lambdas[perms[best][i]];
        out.branch_labels[i] = prev.branch_labels[i];
    }
    return out;
}

}  // namespace detail

std::vector<EigenTriple> sweep_eigenvalues(const SystemParams& p,
                                           std::span<const double> detuning_grid) {
    std::vector<EigenTriple> out;
    out.reserve(detuning_grid.size());
    SystemParams q = p;
    for (double dw : detuning_grid) {
        q.delta_omega = dw;
        EigenTriple t = solve_cubic(characteristic_cubic(q));
        if (out.empty())
            out.push_back(t);  // ascending-imaginary-part labels at the first point
        else
            out.push_back(detail::continue_branches(out.back(), t));
    }
    return out;
}

}  // namespace rarr
