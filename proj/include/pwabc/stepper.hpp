#pragma once

#include "pwabc/boundary.hpp"
#include "pwabc/energy.hpp"
#include "pwabc/numerics.hpp"
#include "pwabc/phase.hpp"
#include "pwabc/physics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pwabc {

/// Called after every accepted step with the step index (0 = initial data),
/// the range coordinate and the new slice.
using StepObserver = std::function<void(std::size_t, double, std::span<const Complex>)>;

struct SimulationConfig {
    Grid2D grid;
    CoefficientModel coeffs = zero_potential();
    PhaseModel phase = plane_phase(0.0, 1.0, 0.0);
    BcKind bc_lower = BcKind::dirichlet;
    BcKind bc_upper = BcKind::dirichlet;
    std::function<Complex(double)> initial;
    /// 0 keeps only the initial and final slices.
    std::size_t snapshot_every = 0;
    bool record_norms = false;
    BoundaryStencil stencil = BoundaryStencil::half_cell;
    std::string preset = "custom";
    StepObserver observer;
    /// Stops after this many steps when smaller than the x-axis interval count.
    std::size_t max_steps = static_cast<std::size_t>(-1);
};

struct Snapshot {
    double x;
    ComplexField field;
};

struct SimulationResult {
    ComplexField initial_field;
    ComplexField final_field;
    std::vector<Snapshot> snapshots;
    std::vector<std::pair<double, double>> norm_history;
    EnergyReport energy;
    std::vector<std::string> warnings;
};

/// Raised when a step produces non-finite values or a singular system.
class NumericalAbort : public std::runtime_error {
public:
    NumericalAbort(std::size_t step, const std::string& what)
        : std::runtime_error("numerical abort at step " + std::to_string(step) + ": " + what), step_(step)
    {
    }
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

inline std::string bc_label(const SimulationConfig& config)
{
    if (config.bc_lower == config.bc_upper) return to_string(config.bc_lower);
    return to_string(config.bc_lower) + "/" + to_string(config.bc_upper);
}

struct LinearSystem {
    Tridiagonal matrix;
    ComplexVector rhs;
};

/// Crank-Nicolson rows 1..n-2 of
///   i (u^{n+1} - u^n) / dx + beta/2 (D_yy u^{n+1} + D_yy u^n) + nu/2 (u^{n+1} + u^n) = 0
/// with coefficients frozen at x_mid. Rows 0 and n-1 are left zero.
inline LinearSystem assemble_interior(std::span<const Complex> u_old, double x_mid, const CoefficientModel& coeffs,
                                      const Axis& y_axis, double dx)
{
    const std::size_t n = u_old.size();
    if (n != y_axis.size()) throw std::invalid_argument("assemble_interior: field does not match the y axis");
    if (!(dx > 0.0)) throw std::invalid_argument("assemble_interior: dx must be positive");
    const double dy = y_axis.step();
    const double beta = coeffs.beta(x_mid);
    const double off = 0.5 * beta / (dy * dy);
    const Complex i_dx{0.0, 1.0 / dx};

    LinearSystem sys{Tridiagonal(n), ComplexVector(n)};
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double nu = coeffs.nu(x_mid, y_axis.point(j));
        sys.matrix.lower[j - 1] = off;
        sys.matrix.upper[j] = off;
        sys.matrix.diag[j] = i_dx - 2.0 * off + 0.5 * nu;
        sys.rhs[j] = i_dx * u_old[j] - off * (u_old[j - 1] - 2.0 * u_old[j] + u_old[j + 1]) - 0.5 * nu * u_old[j];
    }
    return sys;
}

/// Gathers the boundary context for the step starting at x_n.
inline BoundaryContext make_boundary_context(Side side, std::span<const Complex> u_old, double x_mid, double dx,
                                             const SimulationConfig& config)
{
    const Axis& y = config.grid.y_axis;
    const std::size_t n = u_old.size();
    const double yb = side == Side::lower ? y.min() : y.max();
    const auto wave = boundary_wavenumber(config.phase, side, x_mid, y);

    BoundaryContext ctx;
    ctx.side = side;
    ctx.beta = config.coeffs.beta(x_mid);
    ctx.nu = config.coeffs.nu(x_mid, yb);
    ctx.nu_y = config.coeffs.nu_y(x_mid, yb);
    ctx.k = wave.k;
    ctx.k_y = wave.k_y;
    ctx.k_yy = wave.k_yy;
    ctx.dx = dx;
    ctx.dy = y.step();
    ctx.stencil = config.stencil;
    for (std::size_t m = 0; m < 3; ++m) {
        ctx.u_old[m] = side == Side::lower ? u_old[m] : u_old[n - 1 - m];
    }
    return ctx;
}

/// Writes a boundary row into row 0 or n-1, eliminating a third stencil
/// point against the adjacent interior row.
inline void install_boundary_row(LinearSystem& sys, Side side, const BoundaryRow& row)
{
    auto& m = sys.matrix;
    const std::size_t n = m.size();
    if (side == Side::lower) {
        Complex diag = row.coeffs[0];
        Complex upper = row.count > 1 ? row.coeffs[1] : Complex{};
        Complex rhs = row.rhs;
        if (row.count > 2 && row.coeffs[2] != Complex{}) {
            const Complex f = row.coeffs[2] / m.upper[1];
            diag -= f * m.lower[0];
            upper -= f * m.diag[1];
            rhs -= f * sys.rhs[1];
        }
        m.diag[0] = diag;
        m.upper[0] = upper;
        sys.rhs[0] = rhs;
    } else {
        Complex diag = row.coeffs[0];
        Complex lower = row.count > 1 ? row.coeffs[1] : Complex{};
        Complex rhs = row.rhs;
        if (row.count > 2 && row.coeffs[2] != Complex{}) {
            const Complex f = row.coeffs[2] / m.lower[n - 3];
            diag -= f * m.upper[n - 2];
            lower -= f * m.diag[n - 2];
            rhs -= f * sys.rhs[n - 2];
        }
        m.diag[n - 1] = diag;
        m.lower[n - 2] = lower;
        sys.rhs[n - 1] = rhs;
    }
}

namespace detail {

inline ComplexField advance(const ComplexField& state, const SimulationConfig& config, bool* degenerate)
{
    const auto& grid = config.grid;
    if (state.size() != grid.y_axis.size()) throw std::invalid_argument("step: state does not match the grid");
    const std::size_t n = state.x_index;
    const double dx = grid.x_axis.step();
    const double x_mid = grid.x_axis.point(n) + 0.5 * dx;
    const std::span<const Complex> u_old(state.values);

    auto sys = assemble_interior(u_old, x_mid, config.coeffs, grid.y_axis, dx);
    for (Side side : {Side::lower, Side::upper}) {
        const auto ctx = make_boundary_context(side, u_old, x_mid, dx, config);
        const auto row = boundary_row(side == Side::lower ? config.bc_lower : config.bc_upper, ctx);
        if (degenerate != nullptr && row.degenerate) *degenerate = true;
        install_boundary_row(sys, side, row);
    }

    ComplexField next;
    next.x_index = n + 1;
    try {
        next.values = thomas_solve(sys.matrix, sys.rhs);
    } catch (const SingularSystemError& e) {
        throw NumericalAbort(n + 1, e.what());
    }
    return next;
}

} // namespace detail

/// One march x_n -> x_{n+1}; n is taken from state.x_index.
inline ComplexField step(const ComplexField& state, const SimulationConfig& config)
{
    return detail::advance(state, config, nullptr);
}

inline ComplexField sample_initial(const SimulationConfig& config)
{
    if (!config.initial) throw std::invalid_argument("simulation config has no initial condition");
    const Axis& y = config.grid.y_axis;
    ComplexField field;
    field.values.resize(y.size());
    for (std::size_t j = 0; j < y.size(); ++j) field.values[j] = config.initial(y.point(j));
    if (!field.all_finite()) throw std::invalid_argument("initial condition is not finite on the y axis");
    return field;
}

/// Marches from x = 0 to x_max. Throws NumericalAbort on the first
/// non-finite slice.
inline SimulationResult run(const SimulationConfig& config)
{
    const auto& grid = config.grid;
    const double dy = grid.y_axis.step();
    const std::size_t steps = std::min(grid.x_axis.intervals(), config.max_steps);

    SimulationResult result;
    result.initial_field = sample_initial(config);
    ComplexField state = result.initial_field;

    auto record = [&](const ComplexField& f) {
        const double x = grid.x_axis.point(f.x_index);
        const bool last = f.x_index == steps;
        const bool periodic = config.snapshot_every > 0 && f.x_index % config.snapshot_every == 0;
        if (f.x_index == 0 || last || periodic) result.snapshots.push_back({x, f});
        if (config.record_norms) result.norm_history.emplace_back(x, trapezoid_abs2(std::span<const Complex>(f.values), dy));
        if (config.observer) config.observer(f.x_index, x, f.values);
    };
    record(state);

    bool degenerate = false;
    for (std::size_t n = 0; n < steps; ++n) {
        state = detail::advance(state, config, &degenerate);
        if (!state.all_finite()) throw NumericalAbort(n + 1, "non-finite values in the field (instability)");
        record(state);
    }
    if (degenerate) {
        result.warnings.push_back("pade-linear boundary row degenerated to u_x = 0 (nu = 0 at the boundary)");
    }

    result.final_field = std::move(state);
    if (trapezoid_abs2(result.initial_field, dy) > 0.0) {
        result.energy = reflected_energy_ratio(result.initial_field, result.final_field, dy);
    } else {
        result.energy.e_final = trapezoid_abs2(result.final_field, dy);
    }
    result.energy.preset = config.preset;
    result.energy.bc = bc_label(config);
    result.energy.nx = grid.x_axis.size();
    result.energy.ny = grid.y_axis.size();
    return result;
}

} // namespace pwabc
