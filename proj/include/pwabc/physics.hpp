#pragma once

#include "pwabc/numerics.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pwabc {

/// Coefficients of i u_x + beta(x) u_yy + nu(x, y) u = 0.
struct CoefficientModel {
    std::function<double(double)> beta;
    std::function<double(double, double)> nu;
    std::function<double(double, double)> nu_y;
    std::string label;
};

inline CoefficientModel constant_coefficients(double beta0, double nu0)
{
    if (!(beta0 > 0.0)) throw std::invalid_argument("beta must be positive");
    return CoefficientModel{
        [beta0](double) { return beta0; },
        [nu0](double, double) { return nu0; },
        [](double, double) { return 0.0; },
        "constant",
    };
}

/// beta = 1, nu = 0: the free Gaussian-beam benchmark.
inline CoefficientModel zero_potential()
{
    auto m = constant_coefficients(1.0, 0.0);
    m.label = "zero-potential";
    return m;
}

namespace detail {

inline std::size_t bracket(const std::vector<double>& nodes, double t, double& frac)
{
    if (nodes.size() == 1 || t <= nodes.front()) {
        frac = 0.0;
        return 0;
    }
    if (t >= nodes.back()) {
        frac = 1.0;
        return nodes.size() - 2;
    }
    auto it = std::upper_bound(nodes.begin(), nodes.end(), t);
    std::size_t hi = static_cast<std::size_t>(it - nodes.begin());
    std::size_t lo = hi - 1;
    frac = (t - nodes[lo]) / (nodes[hi] - nodes[lo]);
    return lo;
}

inline std::vector<std::vector<double>> read_csv(const std::string& path, const std::string& expected_header)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open coefficient table " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
    line.erase(std::remove_if(line.begin(), line.end(), [](char c) { return c == ' ' || c == '\r'; }), line.end());
    if (line != expected_header) {
        throw std::runtime_error(path + ": expected header '" + expected_header + "', got '" + line + "'");
    }
    const auto columns = static_cast<std::size_t>(std::count(expected_header.begin(), expected_header.end(), ',') + 1);
    std::vector<std::vector<double>> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(cell, &used));
            } catch (const std::exception&) {
                throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
            }
        }
        if (row.size() != columns) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected " + std::to_string(columns) +
                                     " columns");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error(path + ": no data rows");
    return rows;
}

} // namespace detail

/// Separable tabulated medium: beta sampled on x nodes, nu on an (x, y)
/// node lattice stored row-major with x outer. Both are interpolated
/// linearly and clamped outside the table.
class TabulatedCoefficients {
public:
    TabulatedCoefficients(std::vector<double> beta_x, std::vector<double> beta_values, std::vector<double> nu_x,
                          std::vector<double> nu_y, std::vector<double> nu_values)
        : beta_x_(std::move(beta_x)), beta_(std::move(beta_values)), nu_x_(std::move(nu_x)), nu_y_(std::move(nu_y)),
          nu_(std::move(nu_values))
    {
        if (beta_x_.empty() || beta_x_.size() != beta_.size()) throw std::invalid_argument("beta table size mismatch");
        if (nu_x_.empty() || nu_y_.size() < 2 || nu_.size() != nu_x_.size() * nu_y_.size()) {
            throw std::invalid_argument("nu table must be a full x-by-y lattice with at least 2 y nodes");
        }
        for (double b : beta_) {
            if (!(b > 0.0)) throw std::invalid_argument("tabulated beta must be positive");
        }
        if (!std::is_sorted(beta_x_.begin(), beta_x_.end()) || !std::is_sorted(nu_x_.begin(), nu_x_.end()) ||
            !std::is_sorted(nu_y_.begin(), nu_y_.end())) {
            throw std::invalid_argument("table nodes must be ascending");
        }
        dy_ = nu_y_[1] - nu_y_[0];
    }

    double beta(double x) const
    {
        double f = 0.0;
        if (beta_x_.size() == 1) return beta_[0];
        std::size_t i = detail::bracket(beta_x_, x, f);
        return (1.0 - f) * beta_[i] + f * beta_[i + 1];
    }

    double nu(double x, double y) const
    {
        double fx = 0.0;
        double fy = 0.0;
        std::size_t i = nu_x_.size() == 1 ? 0 : detail::bracket(nu_x_, x, fx);
        std::size_t j = detail::bracket(nu_y_, y, fy);
        const std::size_t ny = nu_y_.size();
        auto at = [&](std::size_t ix, std::size_t jy) { return nu_[ix * ny + jy]; };
        const std::size_t i1 = nu_x_.size() == 1 ? i : i + 1;
        double lo = (1.0 - fy) * at(i, j) + fy * at(i, j + 1);
        double hi = (1.0 - fy) * at(i1, j) + fy * at(i1, j + 1);
        return (1.0 - fx) * lo + fx * hi;
    }

    /// Centered difference with the table's y spacing.
    double nu_y(double x, double y) const { return (nu(x, y + dy_) - nu(x, y - dy_)) / (2.0 * dy_); }

    /// Reads `x,beta` and `x,y,nu` CSV tables.
    static TabulatedCoefficients from_csv(const std::string& beta_path, const std::string& nu_path)
    {
        auto beta_rows = detail::read_csv(beta_path, "x,beta");
        std::vector<double> bx;
        std::vector<double> bv;
        for (const auto& r : beta_rows) {
            bx.push_back(r[0]);
            bv.push_back(r[1]);
        }
        auto nu_rows = detail::read_csv(nu_path, "x,y,nu");
        std::vector<double> nx;
        std::vector<double> ny;
        std::vector<double> nv;
        for (const auto& r : nu_rows) {
            if (nx.empty() || r[0] != nx.back()) nx.push_back(r[0]);
            if (nx.size() == 1) ny.push_back(r[1]);
            nv.push_back(r[2]);
        }
        for (std::size_t k = 0; k < nu_rows.size(); ++k) {
            if (ny.empty() || nu_rows[k][1] != ny[k % ny.size()]) {
                throw std::runtime_error(nu_path + ": rows must form a row-major x-by-y lattice");
            }
        }
        return TabulatedCoefficients(std::move(bx), std::move(bv), std::move(nx), std::move(ny), std::move(nv));
    }

private:
    std::vector<double> beta_x_;
    std::vector<double> beta_;
    std::vector<double> nu_x_;
    std::vector<double> nu_y_;
    std::vector<double> nu_;
    double dy_ = 0.0;
};

inline CoefficientModel tabulated_coefficients(TabulatedCoefficients table)
{
    auto shared = std::make_shared<const TabulatedCoefficients>(std::move(table));
    return CoefficientModel{
        [shared](double x) { return shared->beta(x); },
        [shared](double x, double y) { return shared->nu(x, y); },
        [shared](double x, double y) { return shared->nu_y(x, y); },
        "tabulated",
    };
}

/// Beam width a > 0 (complex focus x0 = -i a) and tilt p.
struct GaussianBeamParams {
    double a = 1.0;
    double p = 0.0;
    bool operator==(const GaussianBeamParams&) const = default;
};

/// Exact Gaussian-beam solution for beta = 1, nu = 0:
///   sqrt(x0 / (x + x0)) * exp(i (y^2 - p x0 (2y + p x)) / (4 (x + x0))),  x0 = -i a.
inline Complex gaussian_beam(double x, double y, const GaussianBeamParams& params)
{
    const Complex x0{0.0, -params.a};
    const Complex s = x + x0;
    const Complex phase = (y * y - params.p * x0 * (2.0 * y + params.p * x)) / (4.0 * s);
    return std::sqrt(x0 / s) * std::exp(Complex{0.0, 1.0} * phase);
}

/// u(0, y) = exp(-y^2 / 4a) exp(-i p y / 2).
inline Complex initial_condition(double y, const GaussianBeamParams& params)
{
    return std::exp(-y * y / (4.0 * params.a)) * std::polar(1.0, -0.5 * params.p * y);
}

struct PlaneWaveParams {
    double k = 0.0;
    double beta = 1.0;
    double nu = 0.0;
    double omega = 0.0;
};

/// Ties omega to the dispersion relation omega = nu - beta k^2.
inline PlaneWaveParams make_plane_wave(double k, double beta, double nu)
{
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
    return PlaneWaveParams{k, beta, nu, nu - beta * k * k};
}

inline Complex plane_wave(double x, double y, const PlaneWaveParams& params)
{
    return std::polar(1.0, params.k * y + params.omega * x);
}

/// Centered finite-difference evaluation of i u_x + beta u_yy + nu u.
template <class Field>
Complex pde_residual(const Field& u, double x, double y, double h, const CoefficientModel& coeffs)
{
    const Complex center = u(x, y);
    const Complex ux = (u(x + h, y) - u(x - h, y)) / (2.0 * h);
    const Complex uyy = (u(x, y + h) - 2.0 * center + u(x, y - h)) / (h * h);
    return Complex{0.0, 1.0} * ux + coeffs.beta(x) * uyy + coeffs.nu(x, y) * center;
}

} // namespace pwabc
