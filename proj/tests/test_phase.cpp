#include "pwabc/phase.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace pwabc;

namespace {

/// Brute-force minimum of (y - xi)^2 / (4 beta x) + theta_I(xi) over a
/// uniform scan of `n` points.
double dense_scan_min(const InitialPhase& init, double beta, double x, double y, double lo, double hi, std::size_t n)
{
    double best = std::numeric_limits<double>::infinity();
    const double h = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = lo + static_cast<double>(i) * h;
        best = std::min(best, (y - xi) * (y - xi) / (4.0 * beta * x) + init.theta_i(xi));
    }
    return best;
}

} // namespace

TEST(PlanePhase, TiltedBeamCase)
{
    const auto m = plane_phase(5.0, 1.0, 0.0);
    EXPECT_DOUBLE_EQ(m.theta(1.0, 1.0), -8.75);
    for (double y : {-2.0, 0.3, 4.0}) EXPECT_DOUBLE_EQ(m.theta(0.0, y), linear_initial_phase(5.0).theta_i(y));
}

TEST(PlanePhase, HamiltonJacobiResidual)
{
    std::mt19937_64 rng(100);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int t = 0; t < 100; ++t) {
        const double p = u(rng);
        const double beta = 0.1 + std::abs(u(rng));
        const double nu = u(rng);
        const auto m = plane_phase(p, beta, nu);
        const double x = std::abs(u(rng));
        const double y = u(rng);
        const double h = 0.5;
        const double theta_x = (m.theta(x + h, y) - m.theta(x - h, y)) / (2.0 * h);
        const double k = m.k(x, y);
        EXPECT_NEAR(theta_x + beta * k * k - nu, 0.0, 1e-12);
        EXPECT_NEAR(k, (m.theta(x, y + h) - m.theta(x, y - h)) / (2.0 * h), 1e-12);
    }
}

TEST(PlanePhase, ExplicitSubstitution)
{
    const auto m = plane_phase(5.0, 1.0, 3.0);
    const double theta_x = m.theta(1.0, 0.0) - m.theta(0.0, 0.0);
    EXPECT_DOUBLE_EQ(theta_x, 3.0 - 6.25);
    EXPECT_DOUBLE_EQ(theta_x + 1.0 * m.k(0, 0) * m.k(0, 0) - 3.0, 0.0);
}

TEST(HopfLax, LinearDataReproducesPlanePhase)
{
    const auto plane = plane_phase(5.0, 1.0, 0.0);
    const HopfLaxSearch search{-10.0, 10.0, 2001};
    EXPECT_NEAR(hopf_lax_phase(linear_initial_phase(5.0), 1.0, 0.5, 1.0, search), plane.theta(0.5, 1.0), 1e-8);
}

TEST(HopfLax, VanishingRangeRecoversInitialPhase)
{
    const auto init = linear_initial_phase(5.0);
    const HopfLaxSearch search{-10.0, 10.0, 2001};
    for (double y : {-1.3, 0.0, 2.2}) {
        EXPECT_NEAR(hopf_lax_phase(init, 1.0, 1e-6, y, search), init.theta_i(y), 1e-4);
    }
}

TEST(HopfLax, QuadraticDataMatchesDenseScan)
{
    const auto init = quadratic_initial_phase(1.0);
    const HopfLaxSearch search{-5.0, 5.0, 1001};
    for (double x : {0.1, 0.5, 2.0}) {
        for (double y : {-2.0, 0.3, 1.5}) {
            const double oracle = dense_scan_min(init, 1.0, x, y, -5.0, 5.0, 1'000'000);
            const double value = hopf_lax_phase(init, 1.0, x, y, search);
            EXPECT_NEAR(value, oracle, 1e-7);
            EXPECT_NEAR(value, y * y / (1.0 + 4.0 * x), 1e-9);
        }
    }
}

TEST(HopfLax, NonIncreasingInRangeForConvexNonNegativeData)
{
    const auto init = quadratic_initial_phase(1.0);
    const HopfLaxSearch search{-5.0, 5.0, 1001};
    for (double y : {-1.5, 0.0, 0.8, 2.0}) {
        double prev = init.theta_i(y);
        for (int i = 1; i <= 40; ++i) {
            const double v = hopf_lax_phase(init, 1.0, 0.05 * i, y, search);
            EXPECT_LE(v, prev + 1e-12);
            prev = v;
        }
    }
}

TEST(HopfLax, Errors)
{
    const auto init = linear_initial_phase(5.0);
    EXPECT_THROW(hopf_lax_phase(init, 1.0, 0.0, 1.0, {}), std::domain_error);
    EXPECT_THROW(hopf_lax_phase(init, 1.0, -1.0, 1.0, {}), std::domain_error);
    // Minimizer xi* = y - beta p x = -1.5 lies outside [0, 3].
    EXPECT_THROW(hopf_lax_phase(init, 1.0, 0.5, 1.0, {0.0, 3.0, 301}), std::range_error);
}

TEST(BoundaryWavenumber, PlaneModel)
{
    const auto m = plane_phase(5.0, 1.0, 0.0);
    const auto y = make_axis(-2.0, 2.0, 101);
    for (Side s : {Side::lower, Side::upper}) {
        const auto w = boundary_wavenumber(m, s, 0.3, y);
        EXPECT_DOUBLE_EQ(w.k, -2.5);
        EXPECT_DOUBLE_EQ(w.k_y, 0.0);
        EXPECT_DOUBLE_EQ(w.k_yy, 0.0);
    }
}

TEST(BoundaryWavenumber, ConstantWavenumberHasNoDerivatives)
{
    const double k = 1.7;
    PhaseModel m{[k](double, double y) { return k * y; }, [k](double, double) { return k; },
                 [](double, double) { return 0.0; }, [](double, double) { return 0.0; }, "test"};
    const auto w = boundary_wavenumber(m, Side::upper, 1.0, make_axis(0.0, 1.0, 11));
    EXPECT_EQ(w.k, k);
    EXPECT_EQ(w.k_y, 0.0);
    EXPECT_EQ(w.k_yy, 0.0);
}

TEST(BoundaryWavenumber, HopfLaxQuadraticMatchesAnalyticMinimizer)
{
    const auto y = make_axis(-2.0, 2.0, 513);
    const auto m = hopf_lax_model(quadratic_initial_phase(1.0), 1.0, {-5.0, 5.0, 1001, true}, y.step());
    for (double x : {0.1, 0.4, 1.0}) {
        for (Side s : {Side::lower, Side::upper}) {
            const double b = s == Side::lower ? y.min() : y.max();
            const auto w = boundary_wavenumber(m, s, x, y);
            EXPECT_NEAR(w.k, 2.0 * b / (1.0 + 4.0 * x), 1e-5);
            EXPECT_NEAR(w.k_y, 2.0 / (1.0 + 4.0 * x), 1e-4);
            EXPECT_NEAR(w.k_yy, 0.0, 1e-3);
        }
    }
}

TEST(BoundaryWavenumber, HopfLaxLinearMatchesPlane)
{
    const auto y = make_axis(-2.0, 2.0, 257);
    const auto m = hopf_lax_model(linear_initial_phase(5.0), 1.0, {-20.0, 20.0, 801, true}, y.step());
    const auto w = boundary_wavenumber(m, Side::lower, 0.2, y);
    EXPECT_NEAR(w.k, -2.5, 1e-6);
    EXPECT_NEAR(w.k_y, 0.0, 1e-4);
    EXPECT_NEAR(m.theta(0.0, 1.0), -2.5, 0.0);
}
