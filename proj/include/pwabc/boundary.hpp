#pragma once

#include "pwabc/numerics.hpp"
#include "pwabc/phase.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pwabc {

enum class BcKind { dirichlet, zeroth_order, first_order, kuska, pade_linear };

inline constexpr std::array<BcKind, 5> kAllBcKinds{BcKind::dirichlet, BcKind::zeroth_order, BcKind::first_order,
                                                    BcKind::kuska, BcKind::pade_linear};

inline std::string to_string(BcKind kind)
{
    switch (kind) {
    case BcKind::dirichlet: return "dirichlet";
    case BcKind::zeroth_order: return "abc0";
    case BcKind::first_order: return "abc1";
    case BcKind::kuska: return "kuska";
    case BcKind::pade_linear: return "pade-linear";
    }
    return "unknown";
}

inline BcKind parse_bc_kind(std::string_view name)
{
    for (BcKind kind : kAllBcKinds) {
        if (name == to_string(kind)) return kind;
    }
    throw std::invalid_argument("unknown boundary condition '" + std::string(name) +
                                "' (expected dirichlet|abc0|abc1|kuska|pade-linear)");
}

/// Where the boundary relation is sampled across the first cell.
///   node        - every term at the boundary node, two-point u_y
///   half_cell   - u_x at the node; u_y, u_xy and the u terms at y_{1/2},
///                 where the two-point difference is centered
///   box         - every term at y_{1/2}
///   three_point - every term at the node, second-order one-sided u_y
enum class BoundaryStencil { node, half_cell, box, three_point };

inline std::string to_string(BoundaryStencil s)
{
    switch (s) {
    case BoundaryStencil::node: return "node";
    case BoundaryStencil::half_cell: return "half-cell";
    case BoundaryStencil::box: return "box";
    case BoundaryStencil::three_point: return "three-point";
    }
    return "unknown";
}

inline BoundaryStencil parse_boundary_stencil(std::string_view name)
{
    for (auto s : {BoundaryStencil::node, BoundaryStencil::half_cell, BoundaryStencil::box,
                   BoundaryStencil::three_point}) {
        if (name == to_string(s)) return s;
    }
    throw std::invalid_argument("unknown boundary stencil '" + std::string(name) +
                                "' (expected node|half-cell|box|three-point)");
}

/// Everything a boundary row needs at one boundary for the step n -> n+1.
/// beta, nu, nu_y and the phase data are sampled at x_{n+1/2}; k, k_y, k_yy
/// are the signed values of the phase model. u_old holds u^n at the
/// boundary point and its two inward neighbours.
struct BoundaryContext {
    Side side = Side::lower;
    double beta = 1.0;
    double nu = 0.0;
    double nu_y = 0.0;
    double k = 0.0;
    double k_y = 0.0;
    double k_yy = 0.0;
    double dx = 1.0;
    double dy = 1.0;
    std::array<Complex, 3> u_old{};
    BoundaryStencil stencil = BoundaryStencil::half_cell;
};

/// Linear closure c0 u_B + c1 u_{B-+1} + c2 u_{B-+2} = rhs on u^{n+1}, where
/// index 0 is the boundary point and the others step inward.
struct BoundaryRow {
    std::array<Complex, 3> coeffs{};
    std::size_t count = 1;
    Complex rhs{};
    bool degenerate = false;

    bool operator==(const BoundaryRow&) const = default;
};

/// Local derivative data of a field at a boundary point.
struct LocalJet {
    Complex u;
    Complex u_x;
    Complex u_y;
    Complex u_xy;
};

/// |k| and its y-derivatives re-signed to point out of the domain:
/// k_out = sigma |k| with sigma = -1 at y = a and +1 at y = b.
struct OutgoingWavenumber {
    double k;
    double k_y;
    double k_yy;
};

inline OutgoingWavenumber outgoing_wavenumber(const BoundaryContext& ctx)
{
    const double sigma = side_sign(ctx.side);
    const double abs_k = std::abs(ctx.k);
    // |k|_y = sign(k) k_y; both vanish at k = 0.
    const double sgn = ctx.k > 0.0 ? 1.0 : (ctx.k < 0.0 ? -1.0 : 0.0);
    return OutgoingWavenumber{sigma * abs_k, sigma * sgn * ctx.k_y, sigma * sgn * ctx.k_yy};
}

namespace detail {

constexpr Complex I{0.0, 1.0};

/// Coefficients of the generic boundary operator
///   A u_x + M u_xy + P u_y + Q u = 0.
struct BoundaryOperator {
    Complex a;
    Complex m;
    Complex p;
    Complex q;

    Complex apply(const LocalJet& jet) const { return a * jet.u_x + m * jet.u_xy + p * jet.u_y + q * jet.u; }
};

inline BoundaryOperator transport_operator(const BoundaryContext& ctx)
{
    const auto out = outgoing_wavenumber(ctx);
    const double k2 = ctx.k * ctx.k;
    return BoundaryOperator{
        1.0,
        0.0,
        2.0 * ctx.beta * out.k,
        -I * ctx.beta * k2 + ctx.beta * out.k_y - I * ctx.nu,
    };
}

inline BoundaryOperator first_order_operator(const BoundaryContext& ctx, bool variable_k_terms)
{
    const auto out = outgoing_wavenumber(ctx);
    const double b = ctx.beta;
    const double k2 = ctx.k * ctx.k;
    BoundaryOperator op{
        3.0 * I * out.k,
        -1.0,
        I * (ctx.nu + 3.0 * b * k2),
        out.k * (b * k2 + 3.0 * ctx.nu),
    };
    if (variable_k_terms) {
        op.p += -6.0 * b * out.k_y;
        op.q += I * ctx.nu_y - b * out.k_yy - 3.0 * I * b * out.k * out.k_y;
    }
    return op;
}

inline BoundaryOperator pade_linear_operator(const BoundaryContext& ctx)
{
    if (ctx.nu < 0.0) {
        throw std::domain_error("pade-linear boundary condition requires nu >= 0 at the boundary");
    }
    return BoundaryOperator{
        1.0,
        0.0,
        side_sign(ctx.side) * 2.0 * std::sqrt(ctx.beta * ctx.nu),
        -2.0 * I * ctx.nu,
    };
}

/// Weights of the inward one-sided u_y stencil, boundary point first.
inline std::array<double, 3> dy_weights(const BoundaryContext& ctx)
{
    const double sigma = side_sign(ctx.side);
    if (ctx.stencil == BoundaryStencil::three_point) {
        const double s = sigma / (2.0 * ctx.dy);
        return {3.0 * s, -4.0 * s, s};
    }
    const double s = sigma / ctx.dy;
    return {s, -s, 0.0};
}

/// Forward-in-x differences for u_x and u_xy, Crank-Nicolson averaging for
/// the u_y and u terms.
inline BoundaryRow discretize(const BoundaryContext& ctx, const BoundaryOperator& op)
{
    if (!(ctx.dx > 0.0) || !(ctx.dy > 0.0)) throw std::invalid_argument("boundary row: steps must be positive");
    using Weights = std::array<double, 3>;
    constexpr Weights at_node{1.0, 0.0, 0.0};
    constexpr Weights at_half{0.5, 0.5, 0.0};
    const Weights deriv = dy_weights(ctx);
    const Weights ux = ctx.stencil == BoundaryStencil::box ? at_half : at_node;
    const Weights value =
        ctx.stencil == BoundaryStencil::half_cell || ctx.stencil == BoundaryStencil::box ? at_half : at_node;

    const Complex ux_coeff = op.a / ctx.dx;
    const Complex value_coeff = 0.5 * op.q;
    const Complex uxy_coeff = op.m / ctx.dx;
    const Complex uy_coeff = 0.5 * op.p;

    BoundaryRow row;
    row.count = ctx.stencil == BoundaryStencil::three_point ? 3 : 2;
    for (std::size_t i = 0; i < 3; ++i) {
        const Complex c_ux = ux_coeff * ux[i];
        const Complex c_val = value_coeff * value[i];
        const Complex c_der = deriv[i] * uxy_coeff;
        const Complex c_uy = deriv[i] * uy_coeff;
        row.coeffs[i] = c_ux + c_val + c_der + c_uy;
        row.rhs += (c_ux - c_val + c_der - c_uy) * ctx.u_old[i];
    }
    return row;
}

} // namespace detail

/// Residual of the continuous zeroth-order operator
///   u_x +- 2 beta |k| u_y - i beta k^2 u +- beta |k|_y u - i nu u
/// (lower signs at y = a).
inline Complex zeroth_order_residual(const BoundaryContext& ctx, const LocalJet& jet)
{
    return detail::transport_operator(ctx).apply(jet);
}

/// Residual of the continuous first-order operator including the
/// variable-wavenumber and nu_y terms.
inline Complex first_order_residual(const BoundaryContext& ctx, const LocalJet& jet)
{
    return detail::first_order_operator(ctx, true).apply(jet);
}

/// Residual of the rational-linear operator
///   i (nu + 3 beta k^2) u_y - u_xy -+ 3 i |k| u_x -+ |k| (beta k^2 + 3 nu) u.
inline Complex kuska_residual(const BoundaryContext& ctx, const LocalJet& jet)
{
    return detail::first_order_operator(ctx, false).apply(jet);
}

inline Complex pade_linear_residual(const BoundaryContext& ctx, const LocalJet& jet)
{
    return detail::pade_linear_operator(ctx).apply(jet);
}

inline BoundaryRow dirichlet_row(const BoundaryContext&)
{
    BoundaryRow row;
    row.coeffs = {Complex{1.0, 0.0}, Complex{}, Complex{}};
    row.count = 1;
    row.rhs = 0.0;
    return row;
}

inline BoundaryRow zeroth_order_row(const BoundaryContext& ctx)
{
    return detail::discretize(ctx, detail::transport_operator(ctx));
}

inline BoundaryRow first_order_row(const BoundaryContext& ctx)
{
    return detail::discretize(ctx, detail::first_order_operator(ctx, true));
}

inline BoundaryRow kuska_row(const BoundaryContext& ctx)
{
    return detail::discretize(ctx, detail::first_order_operator(ctx, false));
}

/// With nu = 0 the row reduces to u_x = 0 and is flagged degenerate.
inline BoundaryRow pade_linear_row(const BoundaryContext& ctx)
{
    auto row = detail::discretize(ctx, detail::pade_linear_operator(ctx));
    row.degenerate = ctx.nu == 0.0;
    return row;
}

inline BoundaryRow boundary_row(BcKind kind, const BoundaryContext& ctx)
{
    switch (kind) {
    case BcKind::dirichlet: return dirichlet_row(ctx);
    case BcKind::zeroth_order: return zeroth_order_row(ctx);
    case BcKind::first_order: return first_order_row(ctx);
    case BcKind::kuska: return kuska_row(ctx);
    case BcKind::pade_linear: return pade_linear_row(ctx);
    }
    throw std::invalid_argument("unhandled boundary kind");
}

} // namespace pwabc
