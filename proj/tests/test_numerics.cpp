#include "oracles.hpp"
#include "pwabc/numerics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace pwabc;

TEST(Axis, UniformPoints)
{
    const auto ax = make_axis(-2.0, 2.0, 5);
    EXPECT_EQ(ax.size(), 5u);
    EXPECT_DOUBLE_EQ(ax.step(), 1.0);
    const double expected[] = {-2.0, -1.0, 0.0, 1.0, 2.0};
    for (std::size_t i = 0; i < 5; ++i) EXPECT_DOUBLE_EQ(ax.point(i), expected[i]);
}

TEST(Axis, NarrowBeamRangeStep)
{
    const auto ax = make_axis(0.0, 0.15, 1025);
    EXPECT_EQ(ax.intervals(), 1024u);
    EXPECT_DOUBLE_EQ(ax.step(), 0.15 / 1024.0);
}

TEST(Axis, RejectsBadInput)
{
    EXPECT_THROW(make_axis(0.0, 1.0, 2), std::invalid_argument);
    EXPECT_THROW(make_axis(1.0, 1.0, 10), std::invalid_argument);
    EXPECT_THROW(make_axis(2.0, 1.0, 10), std::invalid_argument);
}

TEST(Axis, EndpointsAreBitExact)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    std::uniform_int_distribution<std::size_t> n(3, 5000);
    for (int t = 0; t < 200; ++t) {
        double lo = u(rng);
        double hi = lo + std::abs(u(rng)) + 1e-3;
        const auto ax = make_axis(lo, hi, n(rng));
        EXPECT_EQ(ax.point(0), lo);
        EXPECT_EQ(ax.point(ax.size() - 1), hi);
        EXPECT_GT(ax.step(), 0.0);
    }
}

TEST(Trapezoid, ConstantModulus)
{
    const auto ax = make_axis(0.0, 1.0, 11);
    ComplexField f;
    for (std::size_t i = 0; i < ax.size(); ++i) f.values.push_back(std::polar(1.0, 0.3 * static_cast<double>(i)));
    EXPECT_NEAR(trapezoid_abs2(f, ax.step()), 1.0, 1e-15);
}

TEST(Trapezoid, LinearOnThreePoints)
{
    ComplexField f{{0.0, 1.0, 2.0}, 0};
    EXPECT_DOUBLE_EQ(trapezoid_abs2(f, 1.0), 3.0);
}

TEST(Trapezoid, SineSquared)
{
    const auto ax = make_axis(0.0, 1.0, 101);
    ComplexField f;
    for (double y : ax.points()) f.values.emplace_back(std::sin(std::numbers::pi * y));
    EXPECT_NEAR(trapezoid_abs2(f, ax.step()), 0.5, 1e-3);
}

TEST(Trapezoid, RejectsNonFinite)
{
    ComplexField f{{1.0, Complex{std::nan(""), 0.0}, 1.0}, 0};
    EXPECT_THROW(trapezoid_abs2(f, 1.0), std::invalid_argument);
}

TEST(Trapezoid, SecondOrderUnderHalving)
{
    struct Case {
        double (*amplitude)(double);
        double lo;
        double hi;
        double exact;
    };
    const Case cases[] = {
        {[](double y) { return y; }, 0.0, 1.0, 1.0 / 3.0},
        {[](double y) { return std::exp(0.5 * y); }, 0.0, 1.0, std::exp(1.0) - 1.0},
        {[](double y) { return std::cos(y); }, 0.0, 1.0, 0.5 + 0.25 * std::sin(2.0)},
    };
    for (const auto& c : cases) {
        double prev_err = 0.0;
        for (std::size_t n : {17u, 33u, 65u, 129u}) {
            const auto ax = make_axis(c.lo, c.hi, n);
            ComplexField f;
            for (double y : ax.points()) f.values.push_back(c.amplitude(y) * Complex{0.6, 0.8});
            const double v = trapezoid_abs2(f, ax.step());
            EXPECT_GE(v, 0.0);
            const double err = std::abs(v - c.exact);
            if (prev_err > 0.0) {
                const double ratio = prev_err / err;
                EXPECT_GE(ratio, 3.5);
                EXPECT_LE(ratio, 4.5);
            }
            prev_err = err;
        }
    }
}

TEST(Thomas, IdentitySystem)
{
    Tridiagonal m(4);
    for (auto& d : m.diag) d = 1.0;
    const ComplexVector rhs{{1, 2}, {3, -4}, {0, 1}, {-5, 0}};
    const auto v = thomas_solve(m, rhs);
    for (std::size_t i = 0; i < rhs.size(); ++i) EXPECT_EQ(v[i], rhs[i]);
}

TEST(Thomas, TwoByTwo)
{
    Tridiagonal m(2);
    m.diag = {2.0, 2.0};
    m.lower = {1.0};
    m.upper = {1.0};
    const auto v = thomas_solve(m, ComplexVector{3.0, 3.0});
    EXPECT_NEAR(std::abs(v[0] - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(v[1] - 1.0), 0.0, 1e-15);
}

TEST(Thomas, MatchesDenseEliminationOracle)
{
    std::mt19937_64 rng(64);
    const auto m = test::random_dominant(64, rng);
    const auto rhs = test::random_vector(64, rng);
    const auto v = thomas_solve(m, rhs);
    const auto ref = test::dense_solve(test::to_dense(m), rhs);
    ComplexVector diff(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) diff[i] = v[i] - ref[i];
    EXPECT_LT(test::max_abs(diff) / test::max_abs(ref), 1e-12);
}

TEST(Thomas, ResidualSmallUpTo4097)
{
    std::mt19937_64 rng(4097);
    for (std::size_t n : {3u, 10u, 257u, 1025u, 4097u}) {
        const auto m = test::random_dominant(n, rng);
        const auto rhs = test::random_vector(n, rng);
        const auto v = thomas_solve(m, rhs);
        const auto mv = m.multiply(v);
        ComplexVector r(n);
        for (std::size_t i = 0; i < n; ++i) r[i] = mv[i] - rhs[i];
        EXPECT_LT(test::max_abs(r) / test::max_abs(rhs), 1e-12) << "n = " << n;
    }
}

TEST(Thomas, ZeroPivotNamesRow)
{
    Tridiagonal m(3);
    m.diag = {1.0, 1.0, 1.0};
    m.lower = {1.0, 0.0};
    m.upper = {1.0, 0.0};
    // Row 1 pivot: 1 - 1 * 1 = 0.
    try {
        thomas_solve(m, ComplexVector{1.0, 1.0, 1.0});
        FAIL() << "expected SingularSystemError";
    } catch (const SingularSystemError& e) {
        EXPECT_EQ(e.row(), 1u);
        EXPECT_NE(std::string(e.what()).find("row 1"), std::string::npos);
    }
}

TEST(Thomas, DimensionMismatch)
{
    Tridiagonal m(3);
    m.diag = {1.0, 1.0, 1.0};
    EXPECT_THROW(thomas_solve(m, ComplexVector{1.0, 1.0}), std::invalid_argument);
}
