#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "rarr/cubic.hpp"
#include "rarr/error.hpp"
#include "support.hpp"

using namespace rarr;

namespace {

constexpr Complex kI{0.0, 1.0};

// Independent determinant route: det(lambda I - M) expanded numerically.
Complex det_shifted(const SystemParams& p, Complex lambda) {
    const auto m = amplitude_matrix(p);
    std::array<std::array<Complex, 3>, 3> a;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a[i][j] = (i == j ? lambda : Complex{}) - m[i][j];
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

double upper_gap(const EigenTriple& t) {
    return std::abs(t.lambdas[2].imag() - t.lambdas[1].imag());
}

}  // namespace

TEST_CASE("lossless cubic at exact Raman resonance") {
    SystemParams p{1.0, 0.1, 0.0, 0.0, 0.0, 0.0, 0.0};
    const auto k = characteristic_cubic(p);
    CHECK(std::abs(k.c2) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(k.c1.real() == doctest::Approx(1.01).epsilon(1e-15));
    CHECK(std::abs(k.c1.imag()) < 1e-15);
    CHECK(std::abs(k.c0) < 1e-15);
}

TEST_CASE("decoupled b mode reduces to the single-mode cubic") {
    SystemParams p{1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    const auto k = characteristic_cubic(p);
    CHECK(std::abs(k.c2) < 1e-15);
    CHECK(k.c1 == Complex{1.0, 0.0});
    CHECK(std::abs(k.c0) < 1e-15);
}

TEST_CASE("lossless cubic matches the generic form for any detuning") {
    SystemParams p{1.0, 0.1, 0.7, 0.0, 0.0, 0.0, 0.0};
    const auto k = characteristic_cubic(p);
    CHECK(std::abs(k.c2 - (-kI * 0.7)) < 1e-15);
    CHECK(std::abs(k.c1 - Complex{1.01, 0.0}) < 1e-15);
    CHECK(std::abs(k.c0 - (-kI * 0.7)) < 1e-15);
}

TEST_CASE("lossy coefficients: hand-expanded values and determinant route") {
    SystemParams p{1.0, 0.1, 1.0, 0.05, 0.07, 0.0, 0.0};
    const auto k = characteristic_cubic(p);
    // Expansion of (l+G/2)(l+k/2)(l+k/2-i dw) + g_a^2 (l+k/2-i dw) + g_b^2 (l+k/2).
    CHECK(std::abs(k.c2 - Complex{0.095, -1.0}) < 1e-15);
    CHECK(std::abs(k.c1 - Complex{1.012975, -0.06}) < 1e-15);
    CHECK(std::abs(k.c0 - Complex{0.035380625, -1.000875}) < 1e-15);

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 8; ++i) {
        const Complex l{u(rng), u(rng)};
        CHECK(std::abs(k.eval(l) - det_shifted(p, l)) < 1e-12 * std::max(1.0, std::abs(l * l * l)));
    }
}

TEST_CASE("resonant roots are 0 and +-i sqrt(1.01)") {
    SystemParams p{1.0, 0.1, 0.0, 0.0, 0.0, 0.0, 0.0};
    const auto t = solve_cubic(characteristic_cubic(p));
    const double w = std::sqrt(1.01);
    CHECK(std::abs(t.lambdas[0] - (-kI * w)) < 1e-12);
    CHECK(std::abs(t.lambdas[1]) < 1e-12);
    CHECK(std::abs(t.lambdas[2] - kI * w) < 1e-12);
}

TEST_CASE("factorized case lambda (lambda^2+1)") {
    const auto t = solve_cubic({0.0, 1.0, 0.0});
    CHECK(std::abs(t.lambdas[0] + kI) < 1e-14);
    CHECK(std::abs(t.lambdas[1]) < 1e-14);
    CHECK(std::abs(t.lambdas[2] - kI) < 1e-14);
}

TEST_CASE("near-degenerate RARR roots sit near +-i g_a") {
    SystemParams p{1.0, 0.1, 1.0, 0.0, 0.0, 0.0, 0.0};
    const auto t = solve_cubic(characteristic_cubic(p));
    CHECK(t.lambdas[0].imag() == doctest::Approx(-1.0).epsilon(0.01));
    CHECK(t.lambdas[1].imag() == doctest::Approx(1.0).epsilon(0.1));
    CHECK(t.lambdas[2].imag() == doctest::Approx(1.0).epsilon(0.1));
    CHECK(!t.degenerate);
}

TEST_CASE("root residuals and Vieta identities hold for random parameter sets") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const SystemParams p = testing::random_system_params(rng, trial % 2 == 0);
        const auto k = characteristic_cubic(p);
        const auto t = solve_cubic(k);
        const double scale = k.scale();
        Complex sum = 0.0, pair = 0.0, prod = 1.0;
        for (int i = 0; i < 3; ++i) {
            CHECK(std::abs(k.eval(t.lambdas[i])) <= 1e-10 * scale);
            sum += t.lambdas[i];
            prod *= t.lambdas[i];
        }
        pair = t.lambdas[0] * t.lambdas[1] + t.lambdas[0] * t.lambdas[2] +
               t.lambdas[1] * t.lambdas[2];
        CHECK(std::abs(sum + k.c2) <= 1e-10 * scale);
        CHECK(std::abs(pair - k.c1) <= 1e-10 * scale);
        CHECK(std::abs(prod + k.c0) <= 1e-10 * scale);
    }
}

TEST_CASE("lossless roots are purely imaginary, lossy roots decay") {
    std::mt19937 rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        const SystemParams p = testing::random_system_params(rng, true);
        for (const auto& l : solve_cubic(characteristic_cubic(p)).lambdas)
            CHECK(std::abs(l.real()) <= 1e-12);
    }
    for (int trial = 0; trial < 100; ++trial) {
        const SystemParams p = testing::random_system_params(rng, false);
        for (const auto& l : solve_cubic(characteristic_cubic(p)).lambdas)
            CHECK(l.real() <= 0.0);
    }
}

TEST_CASE("strong coupling damping rate is (Gamma+kappa)/4 for all branches") {
    SystemParams p{1.0, 0.1, 0.0, 0.05, 0.07, 0.0, 0.0};
    const double expected = -(p.gamma + p.kappa) / 4.0;
    for (double dw : {0.3, 0.7, 1.0, 1.3}) {
        p.delta_omega = dw;
        for (const auto& l : solve_cubic(characteristic_cubic(p)).lambdas)
            CHECK(std::abs(l.real() - expected) <= 0.2 * std::abs(expected));
    }
}

TEST_CASE("sweep shows the avoided crossing near delta_omega = g_a") {
    SystemParams p{1.0, 0.1, 0.0, 0.0, 0.0, 0.0, 0.0};
    const auto grid = testing::uniform_grid(0.0, 3.0, 600);
    const auto sweep = sweep_eigenvalues(p, grid);
    double min_gap = 1e300, at = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (upper_gap(sweep[i]) < min_gap) {
            min_gap = upper_gap(sweep[i]);
            at = grid[i];
        }
    }
    CHECK(min_gap > 0.0);
    CHECK(at >= 0.9);
    CHECK(at <= 1.1);
}

TEST_CASE("decoupled b mode crosses exactly at delta_omega = g_a") {
    SystemParams p{1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    const auto grid = testing::uniform_grid(0.0, 3.0, 601);  // contains 1.0
    const auto sweep = sweep_eigenvalues(p, grid);
    double min_gap = 1e300, at = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (upper_gap(sweep[i]) < min_gap) {
            min_gap = upper_gap(sweep[i]);
            at = grid[i];
        }
    }
    CHECK(min_gap <= 1e-9);
    CHECK(at == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("far detuning: Rabi branches at +-i g_a, free branch at i delta_omega") {
    SystemParams p{1.0, 0.1, 100.0, 0.0, 0.0, 0.0, 0.0};
    const auto t = solve_cubic(characteristic_cubic(p));
    CHECK(t.lambdas[0].imag() == doctest::Approx(-1.0).epsilon(1e-3));
    CHECK(t.lambdas[1].imag() == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(t.lambdas[2].imag() == doctest::Approx(100.0).epsilon(1e-6));
}

TEST_CASE("branch labels agree between two sweep resolutions") {
    SystemParams p{1.0, 0.1, 0.0, 0.0, 0.0, 0.0, 0.0};
    const auto coarse_grid = testing::uniform_grid(0.0, 3.0, 601);
    const auto fine_grid = testing::uniform_grid(0.0, 3.0, 1201);  // nested
    const auto coarse = sweep_eigenvalues(p, coarse_grid);
    const auto fine = sweep_eigenvalues(p, fine_grid);
    for (std::size_t i = 0; i < coarse_grid.size(); ++i) {
        for (int b = 0; b < 3; ++b)
            CHECK(std::abs(coarse[i].lambdas[b] - fine[2 * i].lambdas[b]) < 1e-9);
    }
}

TEST_CASE("branch steps shrink with the grid") {
    SystemParams p{1.0, 0.1, 0.0, 0.0, 0.0, 0.0, 0.0};
    auto max_step = [&](int count) {
        const auto grid = testing::uniform_grid(0.0, 3.0, count);
        const auto sweep = sweep_eigenvalues(p, grid);
        double worst = 0.0;
        for (std::size_t i = 1; i < sweep.size(); ++i)
            for (int b = 0; b < 3; ++b)
                worst = std::max(worst, std::abs(sweep[i].lambdas[b] - sweep[i - 1].lambdas[b]));
        return worst;
    };
    const double coarse = max_step(301);
    const double fine = max_step(1201);
    CHECK(fine < coarse);
    CHECK(fine < 0.01);
}

TEST_CASE("degenerate spectrum is flagged") {
    SystemParams p{1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0};  // roots +-i and i
    CHECK(solve_cubic(characteristic_cubic(p)).degenerate);
}

TEST_CASE("genuinely ambiguous pairing raises, coincident roots do not") {
    EigenTriple prev;
    prev.lambdas = {Complex{0.0, 0.0}, Complex{0.0, 2.0}, Complex{0.0, 10.0}};
    // Two next-roots placed symmetrically between the first two branches: the
    // two pairings cost the same but assign different values.
    EigenTriple ambiguous;
    ambiguous.lambdas = {Complex{0.5, 1.0}, Complex{-0.5, 1.0}, Complex{0.0, 10.0}};
    CHECK_THROWS_AS(detail::continue_branches(prev, ambiguous), NumericalError);

    // A tie caused by numerically coincident roots is resolved silently.
    EigenTriple crossing;
    crossing.lambdas = {Complex{0.0, 1.0}, Complex{0.0, 1.0}, Complex{0.0, 10.0}};
    CHECK_NOTHROW(detail::continue_branches(prev, crossing));
}

TEST_CASE("non-converging input raises a diagnostic") {
    // NaN coefficients cannot satisfy any residual bound.
    const Complex nan{std::numeric_limits<double>::quiet_NaN(), 0.0};
    CHECK_THROWS_AS(solve_cubic({nan, nan, nan}), NumericalError);
}
