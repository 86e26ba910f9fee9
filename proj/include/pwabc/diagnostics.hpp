#pragma once

#include "pwabc/energy.hpp"
#include "pwabc/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace pwabc {

using RealGrid = std::vector<std::vector<double>>;

/// Boundary-amplitude threshold, relative to max|u^0|, below which the
/// widened walls count as untouched.
inline constexpr double kReferenceWallTolerance = 1e-8;

class ReferenceDomainTooSmall : public std::runtime_error {
public:
    ReferenceDomainTooSmall(double ratio, double factor)
        : std::runtime_error("reference run: field reached the widened walls (|u|/max|u0| = " + std::to_string(ratio) +
                             " at widen factor " + std::to_string(factor) + "); use a larger factor"),
          ratio_(ratio)
    {
    }
    double ratio() const noexcept { return ratio_; }

private:
    double ratio_;
};

/// Copies the entries [offset, offset + n) of a wide slice.
inline ComplexField restrict_field(const ComplexField& wide, std::size_t offset, std::size_t n)
{
    ComplexField out;
    out.x_index = wide.x_index;
    out.values.assign(wide.values.begin() + static_cast<std::ptrdiff_t>(offset),
                      wide.values.begin() + static_cast<std::ptrdiff_t>(offset + n));
    return out;
}

/// Runs the same problem on a y-window widened symmetrically by
/// widen_factor with Dirichlet walls, then restricts every slice to the
/// original window. The y step is kept, so (ny - 1) (widen_factor - 1) must
/// be an even integer. Throws ReferenceDomainTooSmall when the field next to
/// either wide wall ever exceeds kReferenceWallTolerance * max|u^0|.
inline SimulationResult reference_run(const SimulationConfig& config, double widen_factor)
{
    if (!(widen_factor >= 2.0)) throw std::invalid_argument("reference_run: widen factor must be >= 2");
    const Axis& y = config.grid.y_axis;
    const double extra = static_cast<double>(y.intervals()) * (widen_factor - 1.0);
    const auto extra_cells = static_cast<std::size_t>(std::llround(extra));
    if (std::abs(extra - static_cast<double>(extra_cells)) > 1e-9 || extra_cells % 2 != 0) {
        throw std::invalid_argument("reference_run: widen factor must add an even number of y cells");
    }
    const std::size_t offset = extra_cells / 2;
    const double pad = static_cast<double>(offset) * y.step();

    SimulationConfig wide = config;
    wide.grid.y_axis = make_axis(y.min() - pad, y.max() + pad, y.size() + extra_cells);
    wide.bc_lower = BcKind::dirichlet;
    wide.bc_upper = BcKind::dirichlet;
    wide.record_norms = false;

    double initial_max = 0.0;
    double wall_max = 0.0;
    const std::size_t wide_n = wide.grid.y_axis.size();
    wide.observer = [&](std::size_t step, double x, std::span<const Complex> u) {
        if (step == 0) {
            for (const auto& v : u) initial_max = std::max(initial_max, std::abs(v));
        }
        wall_max = std::max({wall_max, std::abs(u[1]), std::abs(u[wide_n - 2])});
        if (config.observer) config.observer(step, x, u.subspan(offset, y.size()));
    };

    SimulationResult full = run(wide);
    if (initial_max > 0.0 && wall_max > kReferenceWallTolerance * initial_max) {
        throw ReferenceDomainTooSmall(wall_max / initial_max, widen_factor);
    }

    SimulationResult out;
    out.initial_field = restrict_field(full.initial_field, offset, y.size());
    out.final_field = restrict_field(full.final_field, offset, y.size());
    for (const auto& snap : full.snapshots) out.snapshots.push_back({snap.x, restrict_field(snap.field, offset, y.size())});
    out.warnings = std::move(full.warnings);
    // Norms and energies are measured on the original window.
    if (config.record_norms) {
        for (const auto& snap : out.snapshots) out.norm_history.emplace_back(snap.x, trapezoid_abs2(snap.field, y.step()));
    }
    if (trapezoid_abs2(out.initial_field, y.step()) > 0.0) {
        out.energy = reflected_energy_ratio(out.initial_field, out.final_field, y.step());
    }
    out.energy.preset = config.preset;
    out.energy.bc = "reference";
    out.energy.nx = config.grid.x_axis.size();
    out.energy.ny = y.size();
    return out;
}

/// |u - u_ref| on every snapshot pair; rows follow the snapshot order.
inline RealGrid error_map(const SimulationResult& result, const SimulationResult& reference)
{
    if (result.snapshots.size() != reference.snapshots.size()) {
        throw std::invalid_argument("error_map: snapshot counts differ");
    }
    RealGrid out;
    out.reserve(result.snapshots.size());
    for (std::size_t r = 0; r < result.snapshots.size(); ++r) {
        const auto& a = result.snapshots[r];
        const auto& b = reference.snapshots[r];
        if (a.field.size() != b.field.size() || a.field.x_index != b.field.x_index) {
            throw std::invalid_argument("error_map: grid mismatch at snapshot " + std::to_string(r));
        }
        std::vector<double> row(a.field.size());
        for (std::size_t j = 0; j < row.size(); ++j) row[j] = std::abs(a.field.values[j] - b.field.values[j]);
        out.push_back(std::move(row));
    }
    return out;
}

struct GridMaximum {
    double value = 0.0;
    std::size_t row = 0;
    std::size_t col = 0;
};

inline GridMaximum grid_max(const RealGrid& grid)
{
    GridMaximum best;
    for (std::size_t r = 0; r < grid.size(); ++r) {
        for (std::size_t c = 0; c < grid[r].size(); ++c) {
            if (grid[r][c] > best.value) best = {grid[r][c], r, c};
        }
    }
    return best;
}

} // namespace pwabc
