#include "beam_fixture.hpp"
#include "pwabc/diagnostics.hpp"
#include "pwabc/experiment.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace pwabc;

namespace {

ComplexField constant_field(std::size_t n, Complex v)
{
    return ComplexField{ComplexVector(n, v), 0};
}

SimulationConfig preset_config(const std::string& name, BcKind bc, std::size_t n)
{
    auto cfg = from_preset(name, bc);
    cfg.nx = cfg.ny = n;
    return to_simulation_config(cfg);
}

} // namespace

TEST(EnergyRatio, Examples)
{
    const double dy = 0.1;
    const auto u0 = constant_field(11, 1.0);
    EXPECT_DOUBLE_EQ(reflected_energy_ratio(u0, u0, dy).ratio, 1.0);
    EXPECT_NEAR(reflected_energy_ratio(u0, constant_field(11, 0.5), dy).ratio, 0.25, 1e-15);
    EXPECT_EQ(reflected_energy_ratio(u0, constant_field(11, 0.0), dy).ratio, 0.0);
    EXPECT_THROW(reflected_energy_ratio(constant_field(11, 0.0), u0, dy), std::domain_error);
}

TEST(EnergyRatio, InvariantUnderGlobalPhase)
{
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexField a{ComplexVector(101), 0};
    ComplexField b{ComplexVector(101), 0};
    for (std::size_t j = 0; j < 101; ++j) {
        a.values[j] = {u(rng), u(rng)};
        b.values[j] = {u(rng), u(rng)};
    }
    const double base = reflected_energy_ratio(a, b, 0.01).ratio;
    for (double phi : {0.3, 1.7, -2.9}) {
        ComplexField a2 = a;
        ComplexField b2 = b;
        for (auto& v : a2.values) v *= std::polar(1.0, phi);
        for (auto& v : b2.values) v *= std::polar(1.0, -2.0 * phi);
        EXPECT_NEAR(reflected_energy_ratio(a2, b2, 0.01).ratio, base, 1e-12 * base);
    }
}

TEST(EnergyRatio, CsvRowFormat)
{
    EnergyReport r{2.0, 1e-4, 5e-5, "narrow-beam", "abc0", 513, 513};
    EXPECT_EQ(to_csv_row(r), "narrow-beam,abc0,513,513,2,0.0001,5.0000000000000002e-05");
}

TEST(ReferenceRun, MatchesAnalyticBeam)
{
    const auto cfg = test::convergence_config(3);
    const auto ref = reference_run(cfg, 3.0);
    EXPECT_LT(test::beam_error(ref, cfg), 1e-3);
    EXPECT_EQ(ref.energy.bc, "reference");
    EXPECT_EQ(ref.final_field.size(), cfg.grid.y_axis.size());
}

TEST(ReferenceRun, AgreesWithWindowRunBeforeTheWallIsReached)
{
    // A centered beam that stays well inside: window walls are irrelevant.
    SimulationConfig cfg;
    cfg.grid = {make_axis(0.0, 0.2, 41), make_axis(-10.0, 10.0, 401)};
    cfg.bc_lower = cfg.bc_upper = BcKind::zeroth_order;
    cfg.initial = [](double y) { return initial_condition(y, {0.5, 0.0}); };
    const auto direct = run(cfg);
    const auto ref = reference_run(cfg, 2.0);
    const auto err = grid_max(error_map(direct, ref));
    EXPECT_LT(err.value, 1e-9);
}

TEST(ReferenceRun, ZeroInitialData)
{
    auto cfg = test::convergence_config(0);
    cfg.initial = [](double) { return Complex{}; };
    const auto ref = reference_run(cfg, 2.0);
    for (const auto& v : ref.final_field.values) EXPECT_EQ(v, Complex{});
}

TEST(ReferenceRun, DetectsWallContact)
{
    const auto cfg = preset_config("narrow-beam", BcKind::zeroth_order, 513);
    EXPECT_THROW(reference_run(cfg, 2.0), ReferenceDomainTooSmall);
}

TEST(ReferenceRun, RejectsBadFactor)
{
    const auto cfg = test::convergence_config(0);
    EXPECT_THROW(reference_run(cfg, 1.5), std::invalid_argument);
    EXPECT_THROW(reference_run(cfg, 2.01), std::invalid_argument);
}

TEST(ErrorMap, SelfComparisonIsZero)
{
    auto cfg = test::convergence_config(0);
    cfg.snapshot_every = 4;
    const auto r = run(cfg);
    const auto map = error_map(r, r);
    ASSERT_EQ(map.size(), r.snapshots.size());
    ASSERT_EQ(map.front().size(), cfg.grid.y_axis.size());
    EXPECT_EQ(grid_max(map).value, 0.0);
}

TEST(ErrorMap, MismatchedSnapshotsRejected)
{
    auto cfg = test::convergence_config(0);
    const auto a = run(cfg);
    cfg.snapshot_every = 4;
    const auto b = run(cfg);
    EXPECT_THROW(error_map(a, b), std::invalid_argument);
}

TEST(ErrorMap, AbsorbingErrorConcentratesAtTheWall)
{
    auto cfg = preset_config("narrow-beam", BcKind::zeroth_order, 513);
    cfg.snapshot_every = 32;
    const auto ref = reference_run(cfg, 7.0);
    const auto map = error_map(run(cfg), ref);
    const auto worst = grid_max(map);
    const std::size_t n = cfg.grid.y_axis.size();
    EXPECT_TRUE(worst.col <= 10 || worst.col + 11 >= n) << "column " << worst.col;
    EXPECT_LT(worst.value, 0.1);

    cfg.bc_lower = cfg.bc_upper = BcKind::dirichlet;
    EXPECT_GT(grid_max(error_map(run(cfg), ref)).value, 0.3);
}

TEST(EnergyRatio, DirichletReflectsFarMoreThanAbsorbing)
{
    for (const auto& [name, n] : {std::pair<std::string, std::size_t>{"narrow-beam", 513}, {"wide-beam", 1025}}) {
        const double dir = run(preset_config(name, BcKind::dirichlet, n)).energy.ratio;
        EXPECT_GT(dir, 0.5) << name;
        for (BcKind bc : {BcKind::zeroth_order, BcKind::first_order, BcKind::kuska}) {
            const double abc = run(preset_config(name, bc, n)).energy.ratio;
            EXPECT_GE(dir / abc, 1e3) << name << " " << to_string(bc);
        }
    }
}
