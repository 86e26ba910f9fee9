#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pwabc {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Uniform 1-D axis. The point count includes both endpoints.
class Axis {
public:
    Axis() = default;

    double min() const noexcept { return min_; }
    double max() const noexcept { return max_; }
    std::size_t size() const noexcept { return n_; }
    double step() const noexcept { return step_; }
    std::size_t intervals() const noexcept { return n_ - 1; }

    /// Endpoints are returned bit-exactly.
    double point(std::size_t i) const noexcept
    {
        if (i == 0) return min_;
        if (i + 1 == n_) return max_;
        return min_ + static_cast<double>(i) * step_;
    }

    std::vector<double> points() const
    {
        std::vector<double> out(n_);
        for (std::size_t i = 0; i < n_; ++i) out[i] = point(i);
        return out;
    }

    bool operator==(const Axis&) const = default;

    friend Axis make_axis(double min, double max, std::size_t n);

private:
    double min_ = 0.0;
    double max_ = 1.0;
    std::size_t n_ = 3;
    double step_ = 0.5;
};

/// Builds a uniform axis over [min, max] with n points (n >= 3).
inline Axis make_axis(double min, double max, std::size_t n)
{
    if (n < 3) {
        throw std::invalid_argument("axis needs at least 3 points, got " + std::to_string(n));
    }
    if (!(max > min) || !std::isfinite(min) || !std::isfinite(max)) {
        throw std::invalid_argument("axis requires finite bounds with max > min");
    }
    Axis axis;
    axis.min_ = min;
    axis.max_ = max;
    axis.n_ = n;
    axis.step_ = (max - min) / static_cast<double>(n - 1);
    return axis;
}

/// Tensor-product grid on [0, x_max] x [a, b]; x is the marching direction.
struct Grid2D {
    Axis x_axis;
    Axis y_axis;

    double a() const noexcept { return y_axis.min(); }
    double b() const noexcept { return y_axis.max(); }
    bool operator==(const Grid2D&) const = default;
};

/// One range slice u(x_n, .) of the wavefield.
struct ComplexField {
    ComplexVector values;
    std::size_t x_index = 0;

    std::size_t size() const noexcept { return values.size(); }
    bool all_finite() const noexcept
    {
        for (const auto& v : values) {
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        }
        return true;
    }
};

/// Trapezoid-rule integral of |u|^2 over a uniform axis with spacing `step`.
inline double trapezoid_abs2(std::span<const Complex> values, double step)
{
    if (values.size() < 2) {
        throw std::invalid_argument("trapezoid_abs2 needs at least 2 samples");
    }
    double sum = 0.0;
    for (std::size_t i = 1; i + 1 < values.size(); ++i) sum += std::norm(values[i]);
    sum += 0.5 * (std::norm(values.front()) + std::norm(values.back()));
    return sum * step;
}

inline double trapezoid_abs2(const ComplexField& field, double step)
{
    if (!field.all_finite()) {
        throw std::invalid_argument("trapezoid_abs2: field contains non-finite values");
    }
    return trapezoid_abs2(std::span<const Complex>(field.values), step);
}

/// Complex tridiagonal matrix. lower[i] couples row i+1 to column i,
/// upper[i] couples row i to column i+1.
struct Tridiagonal {
    ComplexVector lower;
    ComplexVector diag;
    ComplexVector upper;

    Tridiagonal() = default;
    explicit Tridiagonal(std::size_t n) : lower(n > 0 ? n - 1 : 0), diag(n), upper(n > 0 ? n - 1 : 0) {}

    std::size_t size() const noexcept { return diag.size(); }

    bool consistent() const noexcept
    {
        return !diag.empty() && lower.size() + 1 == diag.size() && upper.size() + 1 == diag.size();
    }

    ComplexVector multiply(std::span<const Complex> v) const
    {
        const std::size_t n = size();
        ComplexVector out(n);
        for (std::size_t i = 0; i < n; ++i) {
            Complex s = diag[i] * v[i];
            if (i > 0) s += lower[i - 1] * v[i - 1];
            if (i + 1 < n) s += upper[i] * v[i + 1];
            out[i] = s;
        }
        return out;
    }
};

class SingularSystemError : public std::runtime_error {
public:
    explicit SingularSystemError(std::size_t row)
        : std::runtime_error("tridiagonal solve: zero pivot at row " + std::to_string(row)), row_(row)
    {
    }
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

inline constexpr double kMinPivot = 1e-300;

/// Thomas elimination without pivoting. Throws SingularSystemError when a
/// pivot magnitude drops below kMinPivot.
inline ComplexVector thomas_solve(const Tridiagonal& m, std::span<const Complex> rhs)
{
    if (!m.consistent() || rhs.size() != m.size()) {
        throw std::invalid_argument("thomas_solve: dimension mismatch");
    }
    const std::size_t n = m.size();
    ComplexVector c(n);
    ComplexVector d(n);

    Complex pivot = m.diag[0];
    if (std::abs(pivot) < kMinPivot) throw SingularSystemError(0);
    c[0] = n > 1 ? m.upper[0] / pivot : Complex{};
    d[0] = rhs[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = m.diag[i] - m.lower[i - 1] * c[i - 1];
        if (std::abs(pivot) < kMinPivot) throw SingularSystemError(i);
        c[i] = i + 1 < n ? m.upper[i] / pivot : Complex{};
        d[i] = (rhs[i] - m.lower[i - 1] * d[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) d[i] -= c[i] * d[i + 1];
    return d;
}

} // namespace pwabc
