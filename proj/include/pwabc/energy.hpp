#pragma once

#include "pwabc/numerics.hpp"

#include <cstdio>
#include <stdexcept>
#include <string>

namespace pwabc {

/// Transverse energy at the last range step relative to the first.
struct EnergyReport {
    double e0 = 0.0;
    double e_final = 0.0;
    double ratio = 0.0;
    std::string preset;
    std::string bc;
    std::size_t nx = 0;
    std::size_t ny = 0;
};

inline EnergyReport reflected_energy_ratio(const ComplexField& u0, const ComplexField& u_final, double dy)
{
    if (u0.size() != u_final.size()) throw std::invalid_argument("reflected_energy_ratio: field size mismatch");
    EnergyReport report;
    report.e0 = trapezoid_abs2(u0, dy);
    if (!(report.e0 > 0.0)) throw std::domain_error("reflected_energy_ratio: initial energy is zero");
    report.e_final = trapezoid_abs2(u_final, dy);
    report.ratio = report.e_final / report.e0;
    report.ny = u0.size();
    return report;
}

inline constexpr const char* kEnergyCsvHeader = "preset,bc,nx,ny,e0,e_final,ratio";

/// One CSV row in the `preset,bc,nx,ny,e0,e_final,ratio` layout.
inline std::string to_csv_row(const EnergyReport& r)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, ",%zu,%zu,%.17g,%.17g,%.17g", r.nx, r.ny, r.e0, r.e_final, r.ratio);
    return r.preset + "," + r.bc + buf;
}

} // namespace pwabc
