#pragma once

#include "pwabc/numerics.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>

namespace pwabc {

enum class Side { lower, upper };

/// -1 at y = a, +1 at y = b.
constexpr double side_sign(Side side) noexcept { return side == Side::lower ? -1.0 : 1.0; }

inline const char* to_string(Side side) noexcept { return side == Side::lower ? "lower" : "upper"; }

/// Phase theta(x, y) solving theta_x + beta theta_y^2 - nu = 0, with the
/// transverse wavenumber k = theta_y and its first two y-derivatives.
struct PhaseModel {
    std::function<double(double, double)> theta;
    std::function<double(double, double)> k;
    std::function<double(double, double)> k_y;
    std::function<double(double, double)> k_yy;
    std::string label;
};

struct InitialPhase {
    std::function<double(double)> theta_i;
    std::string description;
};

inline InitialPhase linear_initial_phase(double p)
{
    return InitialPhase{[p](double xi) { return -0.5 * p * xi; }, "linear(p=" + std::to_string(p) + ")"};
}

inline InitialPhase quadratic_initial_phase(double c)
{
    return InitialPhase{[c](double xi) { return c * xi * xi; }, "quadratic(c=" + std::to_string(c) + ")"};
}

/// theta = -(p/2) y + (nu - beta p^2 / 4) x; the exact characteristic
/// solution for linear Cauchy data and constant coefficients.
inline PhaseModel plane_phase(double p, double beta, double nu)
{
    if (!(beta > 0.0)) throw std::invalid_argument("plane_phase: beta must be positive");
    const double slope = -0.5 * p;
    const double rate = nu - 0.25 * beta * p * p;
    return PhaseModel{
        [slope, rate](double x, double y) { return slope * y + rate * x; },
        [slope](double, double) { return slope; },
        [](double, double) { return 0.0; },
        [](double, double) { return 0.0; },
        "plane",
    };
}

/// Minimizer search window for the Hopf-Lax formula. With
/// `relative_to_y` the window is [y + xi_min, y + xi_max].
struct HopfLaxSearch {
    double xi_min = -10.0;
    double xi_max = 10.0;
    std::size_t n_coarse = 2001;
    bool relative_to_y = false;
};

struct HopfLaxMinimum {
    double value;
    double xi;
};

/// Evaluates min over xi of (y - xi)^2 / (4 beta x) + theta_I(xi) by a
/// coarse scan followed by golden-section refinement.
inline HopfLaxMinimum hopf_lax_minimum(const InitialPhase& initial, double beta, double x, double y,
                                       const HopfLaxSearch& search)
{
    if (!(x > 0.0)) throw std::domain_error("hopf_lax_phase: x must be positive; use theta_I at x = 0");
    if (!(beta > 0.0)) throw std::invalid_argument("hopf_lax_phase: beta must be positive");
    if (search.n_coarse < 3 || !(search.xi_max > search.xi_min)) {
        throw std::invalid_argument("hopf_lax_phase: bad search window");
    }
    const double lo = search.relative_to_y ? y + search.xi_min : search.xi_min;
    const double hi = search.relative_to_y ? y + search.xi_max : search.xi_max;
    const double scale = 1.0 / (4.0 * beta * x);
    auto cost = [&](double xi) { return (y - xi) * (y - xi) * scale + initial.theta_i(xi); };

    const double h = (hi - lo) / static_cast<double>(search.n_coarse - 1);
    std::size_t best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < search.n_coarse; ++i) {
        const double v = cost(lo + static_cast<double>(i) * h);
        if (v < best_value) {
            best_value = v;
            best = i;
        }
    }
    if (best == 0 || best + 1 == search.n_coarse) {
        throw std::range_error("hopf_lax_phase: minimizer at search-window edge; widen the interval");
    }

    constexpr double inv_phi = 0.6180339887498949;
    double left = lo + static_cast<double>(best - 1) * h;
    double right = lo + static_cast<double>(best + 1) * h;
    double c = right - inv_phi * (right - left);
    double d = left + inv_phi * (right - left);
    double fc = cost(c);
    double fd = cost(d);
    while (right - left > 1e-10) {
        if (fc < fd) {
            right = d;
            d = c;
            fd = fc;
            c = right - inv_phi * (right - left);
            fc = cost(c);
        } else {
            left = c;
            c = d;
            fc = fd;
            d = left + inv_phi * (right - left);
            fd = cost(d);
        }
    }
    HopfLaxMinimum out{best_value, lo + static_cast<double>(best) * h};
    for (double xi : {0.5 * (left + right), c, d}) {
        const double v = cost(xi);
        if (v < out.value) out = {v, xi};
    }
    return out;
}

inline double hopf_lax_phase(const InitialPhase& initial, double beta, double x, double y,
                             const HopfLaxSearch& search)
{
    return hopf_lax_minimum(initial, beta, x, y, search).value;
}

/// Numeric phase model backed by the Hopf-Lax formula (constant beta,
/// nu = 0). k, k_y and k_yy are centered differences of theta with step h;
/// theta_I is defined for all y, so the stencils may straddle a boundary.
inline PhaseModel hopf_lax_model(InitialPhase initial, double beta, HopfLaxSearch search, double h)
{
    if (!(h > 0.0)) throw std::invalid_argument("hopf_lax_model: derivative step must be positive");
    auto init = std::make_shared<const InitialPhase>(std::move(initial));
    auto theta = [init, beta, search](double x, double y) {
        if (x <= 0.0) return init->theta_i(y);
        return hopf_lax_phase(*init, beta, x, y, search);
    };
    return PhaseModel{
        theta,
        [theta, h](double x, double y) { return (theta(x, y + h) - theta(x, y - h)) / (2.0 * h); },
        [theta, h](double x, double y) {
            return (theta(x, y + h) - 2.0 * theta(x, y) + theta(x, y - h)) / (h * h);
        },
        [theta, h](double x, double y) {
            return (theta(x, y + 2.0 * h) - 2.0 * theta(x, y + h) + 2.0 * theta(x, y - h) - theta(x, y - 2.0 * h)) /
                   (2.0 * h * h * h);
        },
        "hopf-lax:" + init->description,
    };
}

struct WavenumberSample {
    double k;
    double k_y;
    double k_yy;
};

/// Samples k and its y-derivatives at the boundary ordinate of `side`.
inline WavenumberSample boundary_wavenumber(const PhaseModel& model, Side side, double x, const Axis& y_axis)
{
    const double y = side == Side::lower ? y_axis.min() : y_axis.max();
    return WavenumberSample{model.k(x, y), model.k_y(x, y), model.k_yy(x, y)};
}

} // namespace pwabc
